"""Coalgebras over a distributive law and the duplicial operator on bar resolutions."""

from dataclasses import dataclass

from .budget import as_budget
from .duplicial import DuplicialFamily, check_duplicial_map, classify_duplicial
from .errors import CoalgebraInvalid, ShapeMismatch, VerificationFailed
from .fincat import NatTrans, enumerate_functors, enumerate_nat_trans, check_nat
from .report import Check
from .simplicial import bar_resolution, reverse


@dataclass(frozen=True)
class RightCoalgebra:
    """``xi: g x -> h x``."""

    law: object
    x: int
    xi: int


@dataclass(frozen=True)
class LeftCoalgebra:
    """``phi: f h => f g`` for a functor ``f: A -> P``."""

    law: object
    f: object
    phi: NatTrans


def check_right_coalgebra(r):
    g, h = r.law.g, r.law.h
    A = g.base
    x, xi = r.x, r.xi
    gx, hx = g.endo.obj[x], h.endo.obj[x]
    if not (0 <= xi < A.n_mor and A.src[xi] == gx and A.tgt[xi] == hx):
        raise ShapeMismatch("xi must be a morphism g x -> h x")
    lam = r.law.lam
    c = A.compose
    lhs = c(h.comult[x], xi)
    rhs = c(h.endo.mor[xi], lam[x], g.endo.mor[xi], g.comult[x])
    if lhs != rhs:
        return Check.failed("delta diagram", x)
    if c(h.counit[x], xi) != g.counit[x]:
        return Check.failed("epsilon diagram", x)
    return Check.passed()


def check_left_coalgebra(l):
    g, h = l.law.g, l.law.h
    A, f, phi = g.base, l.f, l.phi
    if f.dom != A or phi.src != h.endo.then(f) or phi.tgt != g.endo.then(f):
        raise ShapeMismatch("phi must have shape f h => f g")
    r = check_nat(phi)
    if not r:
        return Check.failed("naturality of phi", *r.witness)
    P = f.cod
    lam = l.law.lam
    go, ho = g.endo.obj, h.endo.obj
    for x in A.objects:
        lhs = P.compose(f.mor[g.comult[x]], phi[x])
        rhs = P.compose(phi[go[x]], f.mor[lam[x]], phi[ho[x]], f.mor[h.comult[x]])
        if lhs != rhs:
            return Check.failed("delta diagram", x)
    for x in A.objects:
        if P.compose(f.mor[g.counit[x]], phi[x]) != f.mor[h.counit[x]]:
            return Check.failed("epsilon diagram", x)
    return Check.passed()


def lambda_power(law, n):
    """``lambda^n: g^n h => h g^n``, applying ``g^{n-1} lambda`` first and ``lambda g^{n-1}`` last."""
    g, h = law.g, law.h
    A = g.base
    src = h.endo.then(g.power(n))
    tgt = g.power(n).then(h.endo)
    comps = []
    for x in A.objects:
        out = A.ident[src.obj[x]]
        gk = x
        for k in range(n):
            out = A.compose(g.power(n - 1 - k).mor[law.lam[gk]], out)
            gk = g.endo.obj[gk]
        comps.append(out)
    return NatTrans(src, tgt, comps)


def lambda_power_rev(law, n):
    """``g h^n => h^n g``, applying ``lambda h^{n-1}`` first and ``h^{n-1} lambda`` last."""
    g, h = law.g, law.h
    A = g.base
    src = h.power(n).then(g.endo)
    tgt = g.endo.then(h.power(n))
    comps = []
    for x in A.objects:
        hx = [x]
        for _ in range(n):
            hx.append(h.endo.obj[hx[-1]])
        out = A.ident[src.obj[x]]
        for k in range(n):
            out = A.compose(h.power(k).mor[law.lam[hx[n - 1 - k]]], out)
        comps.append(out)
    return NatTrans(src, tgt, comps)


def _validate(l, r):
    if l.law is not r.law and l.law != r.law:
        raise CoalgebraInvalid("left and right coalgebras are over different laws")
    for check, label in ((check_right_coalgebra(r), "right"), (check_left_coalgebra(l), "left")):
        if not check:
            raise CoalgebraInvalid(f"{label} coalgebra fails the {check.failure}", check.witness)


def bs_operator(l, r, N, validate=True):
    """The duplicial family ``t_n = phi_{g^n x} . f(lambda^n_x) . f(g^n xi)`` on ``f^g(x)``.

    The classification is computed by the caller; nothing is assumed here.
    """
    if validate:
        _validate(l, r)
    g, f, x = r.law.g, l.f, r.x
    X = bar_resolution(g, f, x, N)
    P = f.cod
    gx = [x]
    for _ in range(N + 1):
        gx.append(g.endo.obj[gx[-1]])
    t = {}
    for n in range(0, N + 1):
        lam_n = lambda_power(r.law, n)
        t[n] = P.compose(l.phi[gx[n]], f.mor[lam_n[x]], f.mor[g.power(n).mor[r.xi]])
    return DuplicialFamily(X, t)


def bs_operator_reversed(l, r, N, validate=True):
    """Duplicial structure on the reversed bar resolution of ``h``:
    ``t'_n = f(h^n xi) . f(lambda'^n_x) . phi_{h^n x}``.
    """
    if validate:
        _validate(l, r)
    h, f, x = r.law.h, l.f, r.x
    X = reverse(bar_resolution(h, f, x, N))
    P = f.cod
    hx = [x]
    for _ in range(N + 1):
        hx.append(h.endo.obj[hx[-1]])
    t = {}
    for n in range(0, N + 1):
        lam_n = lambda_power_rev(r.law, n)
        t[n] = P.compose(f.mor[h.power(n).mor[r.xi]], f.mor[lam_n[x]], l.phi[hx[n]])
    return DuplicialFamily(X, t)


def _iterates_xi(r, N):
    """``xi^(k): g^k x -> h^k x`` for ``k = 0..N+1``."""
    law = r.law
    g, h = law.g, law.h
    A = g.base
    out = [A.ident[r.x], r.xi]
    for k in range(1, N + 1):
        lam_k = lambda_power(law, k)
        out.append(A.compose(h.endo.mor[out[k]], lam_k[r.x], g.power(k).mor[r.xi]))
    return out


def _iterates_phi(l, N):
    """``phi^(k)``: component tables of ``f h^k => f g^k`` for ``k = 0..N+1``."""
    law = l.law
    g, h = law.g, law.h
    A, P, f = g.base, l.f.cod, l.f
    out = [[P.ident[f.obj[x]] for x in A.objects], list(l.phi.comp)]
    for k in range(1, N + 1):
        lam_k = lambda_power_rev(law, k)
        prev = out[k]
        comps = []
        for x in A.objects:
            hk = h.power(k).obj[x]
            comps.append(P.compose(prev[g.endo.obj[x]], f.mor[lam_k[x]], l.phi[hk]))
        out.append(comps)
    return out


@dataclass(frozen=True)
class Comparison:
    direction: str
    maps: dict
    source: DuplicialFamily
    target: DuplicialFamily
    report: Check

    def __bool__(self):
        return bool(self.report)


def iterate_comparison(l, r, N, direction="g_to_h", raise_on_failure=False):
    """Candidate levelwise maps between ``f^g(x)`` and the reversed ``f^h(x)``, then verified."""
    F = bs_operator(l, r, N)
    G = bs_operator_reversed(l, r, N, validate=False)
    f = l.f
    if direction == "g_to_h":
        xs = _iterates_xi(r, N)
        maps = {n: f.mor[xs[n + 1]] for n in range(-1, N + 1)}
        report = check_duplicial_map(F, G, maps)
        src, tgt = F, G
    elif direction == "h_to_g":
        ps = _iterates_phi(l, N)
        maps = {n: ps[n + 1][r.x] for n in range(-1, N + 1)}
        report = check_duplicial_map(G, F, maps)
        src, tgt = G, F
    else:
        raise ValueError(f"direction must be g_to_h or h_to_g, not {direction!r}")
    if raise_on_failure and not report:
        raise VerificationFailed(f"{direction} comparison fails: {report.failure}", report.witness)
    return Comparison(direction, maps, src, tgt, report)


def comparisons_inverse(R, L):
    """Whether two verified comparisons compose to identities at every level."""
    T = R.source.target
    X, Y = R.source.base, R.target.base
    for n in sorted(R.maps):
        if T.compose(L.maps[n], R.maps[n]) != X.ident(n) or T.compose(R.maps[n], L.maps[n]) != Y.ident(n):
            return Check.failed("not mutually inverse", n)
    return Check.passed()


# -- enumeration -----------------------------------------------------------


def enumerate_right_coalgebras(law, budget=None):
    budget = as_budget(budget)
    g, h = law.g, law.h
    A = g.base
    out = []
    for x in A.objects:
        for xi in A.hom(g.endo.obj[x], h.endo.obj[x]):
            budget.spend()
            r = RightCoalgebra(law, x, xi)
            if check_right_coalgebra(r):
                out.append(r)
    return out


def enumerate_left_coalgebras(law, P=None, budget=None, functors=None):
    """All ``(f, phi)`` with ``f: A -> P`` (default ``P = A``)."""
    budget = as_budget(budget)
    g, h = law.g, law.h
    A = g.base
    P = A if P is None else P
    out = []
    for f in (functors if functors is not None else enumerate_functors(A, P, budget)):
        fh, fg = h.endo.then(f), g.endo.then(f)
        for phi in enumerate_nat_trans(fh, fg, budget):
            budget.spend()
            l = LeftCoalgebra(law, f, phi)
            if check_left_coalgebra(l):
                out.append(l)
    return out


def bs_instances(A, budget=None, P=None):
    """Yield ``(law, l, r)`` over every comonad pair, distributive law and coalgebra pair on ``A``."""
    from .fincat import enumerate_comonads, enumerate_distributive_laws
    budget = as_budget(budget)
    comonads = enumerate_comonads(A, budget)
    functors = None
    for g in comonads:
        for h in comonads:
            for law in enumerate_distributive_laws(g, h, budget):
                rights = enumerate_right_coalgebras(law, budget)
                if not rights:
                    continue
                if functors is None:
                    functors = list(enumerate_functors(A, A if P is None else P, budget))
                for l in enumerate_left_coalgebras(law, P, budget, functors):
                    for r in rights:
                        yield law, l, r


def soundness_sweep(categories, N=4, budget=None, P=None):
    """Every comonad pair, law, right and left coalgebra on each base; classify each B-S family.

    Returns ``(instances, failures)`` where failures lists ``(name, description)``.
    """
    budget = as_budget(budget)
    instances, failures = 0, []
    for name, A in categories.items():
        for law, l, r in bs_instances(A, budget, P):
            instances += 1
            verdict = classify_duplicial(bs_operator(l, r, N, validate=False))
            if not verdict.valid:
                failures.append((name, repr((law, r.x, r.xi, l.f, l.phi)), verdict.report))
    return instances, failures

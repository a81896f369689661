"""Finite categories, functors, natural transformations, comonads,
distributive laws and adjunctions.

Objects and morphisms are dense integer ids; every table is materialized, so
all law checks are exhaustive scans and every enumerator is deterministic
(lexicographic in the id tables).
"""

from functools import cached_property
from itertools import product

from .budget import as_budget
from .errors import BadIdentity, MissingComposite, NotAssociative, ShapeMismatch
from .report import Check


class FinCategory:
    """A finite category given by its composition table.

    ``comp`` maps a composable pair ``(g, f)`` (meaning ``g . f``, with
    ``tgt(f) == src(g)``) to the id of the composite.
    """

    def __init__(self, objects, morphisms, identity, comp, name=None):
        if isinstance(objects, int):
            objects = [str(i) for i in range(objects)]
        self.obj_names = tuple(str(o) for o in objects)
        self.mor_names = tuple(str(m[0]) for m in morphisms)
        self.src = tuple(int(m[1]) for m in morphisms)
        self.tgt = tuple(int(m[2]) for m in morphisms)
        self.ident = tuple(int(i) for i in identity)
        if not isinstance(comp, dict):
            comp = {(int(g), int(f)): int(gf) for g, f, gf in comp}
        self.comp = comp
        self.name = name

    @property
    def n_obj(self):
        return len(self.obj_names)

    @property
    def n_mor(self):
        return len(self.mor_names)

    @property
    def objects(self):
        return range(self.n_obj)

    @property
    def morphisms(self):
        return range(self.n_mor)

    @cached_property
    def _homs(self):
        homs = {(a, b): [] for a in self.objects for b in self.objects}
        for m in self.morphisms:
            homs[self.src[m], self.tgt[m]].append(m)
        return {k: tuple(v) for k, v in homs.items()}

    def hom(self, a, b):
        return self._homs[a, b]

    def compose(self, *ms):
        """``compose(h, g, f) == h . g . f``."""
        out = ms[-1]
        for m in reversed(ms[:-1]):
            out = self.comp[m, out]
        return out

    def composable_pairs(self):
        for f in self.morphisms:
            for g in self.morphisms:
                if self.src[g] == self.tgt[f]:
                    yield g, f

    def is_identity(self, f):
        return self.ident[self.src[f]] == f

    def inverse(self, f):
        a, b = self.src[f], self.tgt[f]
        for g in self.hom(b, a):
            if self.comp[g, f] == self.ident[a] and self.comp[f, g] == self.ident[b]:
                return g
        return None

    def is_iso(self, f):
        return self.inverse(f) is not None

    def is_groupoid(self):
        return all(self.is_iso(f) for f in self.morphisms)

    def opposite(self):
        morphisms = [(n, t, s) for n, s, t in zip(self.mor_names, self.src, self.tgt)]
        comp = {(f, g): gf for (g, f), gf in self.comp.items()}
        return FinCategory(self.obj_names, morphisms, self.ident, comp,
                           name=f"{self.name}^op" if self.name else None)

    @cached_property
    def key(self):
        return (self.n_obj, self.src, self.tgt, self.ident,
                tuple(sorted(self.comp.items())))

    def __eq__(self, other):
        return isinstance(other, FinCategory) and (self is other or self.key == other.key)

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        label = self.name or "FinCategory"
        return f"<{label}: {self.n_obj} objects, {self.n_mor} morphisms>"


def validate_category(raw):
    """Return ``raw`` as a checked FinCategory, raising on the first violation.

    Accepts a FinCategory or a dict in the JSON layout of :mod:`duplex.io`.
    """
    if isinstance(raw, dict):
        from .io import category_from_json
        C = category_from_json(raw, validate=False)
    else:
        C = raw
    n, m = C.n_obj, C.n_mor
    for f in C.morphisms:
        if not (0 <= C.src[f] < n and 0 <= C.tgt[f] < n):
            raise MissingComposite(f"morphism {f} has an out-of-range endpoint", (f,))
    if len(C.ident) != n:
        raise BadIdentity("identity table has the wrong length", ())
    for x in C.objects:
        i = C.ident[x]
        if not (0 <= i < m) or C.src[i] != x or C.tgt[i] != x:
            raise BadIdentity(f"identity of object {x} is not an endomorphism of {x}", (x,))
    for (g, f), gf in C.comp.items():
        if not (0 <= g < m and 0 <= f < m) or C.src[g] != C.tgt[f]:
            raise MissingComposite(f"composite entry ({g},{f}) for a non-composable pair", (g, f))
        if not (0 <= gf < m) or C.src[gf] != C.src[f] or C.tgt[gf] != C.tgt[g]:
            raise MissingComposite(f"composite of ({g},{f}) has the wrong source or target", (g, f))
    for g, f in C.composable_pairs():
        if (g, f) not in C.comp:
            raise MissingComposite(f"composite of ({g},{f}) is missing", (g, f))
    for f in C.morphisms:
        if C.comp[C.ident[C.tgt[f]], f] != f or C.comp[f, C.ident[C.src[f]]] != f:
            raise BadIdentity(f"identity law fails at morphism {f}", (C.src[f],))
    for f in C.morphisms:
        for g in _out(C, C.tgt[f]):
            gf = C.comp[g, f]
            for h in _out(C, C.tgt[g]):
                if C.comp[h, gf] != C.comp[C.comp[h, g], f]:
                    raise NotAssociative(f"associativity fails at ({h},{g},{f})", (h, g, f))
    return C


def _out(C, a):
    return [g for b in C.objects for g in C.hom(a, b)]


# -- constructors ----------------------------------------------------------


def terminal_category():
    return FinCategory(["*"], [("1", 0, 0)], [0], {(0, 0): 0}, name="terminal")


def discrete_category(n):
    return FinCategory(n, [(f"1_{i}", i, i) for i in range(n)], list(range(n)),
                       {(i, i): i for i in range(n)}, name=f"discrete{n}")


def poset_category(n, leq, name=None):
    """Category of the preorder on ``range(n)`` generated by the pairs ``leq``."""
    rel = {(i, i) for i in range(n)} | {tuple(p) for p in leq}
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in product(list(rel), list(rel)):
            if b == c and (a, d) not in rel:
                rel.add((a, d))
                changed = True
    arrows = sorted(rel, key=lambda p: (p[0] != p[1], p))
    ids = {p: k for k, p in enumerate(arrows)}
    morphisms = [(f"{a}<={b}" if a != b else f"1_{a}", a, b) for a, b in arrows]
    comp = {}
    for (a, b) in arrows:
        for (c, d) in arrows:
            if d == a:
                comp[ids[a, b], ids[c, d]] = ids[c, b]
    return FinCategory(n, morphisms, [ids[i, i] for i in range(n)], comp,
                       name=name or f"poset{n}")


def monoid_category(mult, names=None, name=None):
    """One-object category of the monoid with table ``mult`` and unit 0."""
    k = len(mult)
    names = names or [str(i) for i in range(k)]
    comp = {(g, f): mult[g][f] for g in range(k) for f in range(k)}
    return FinCategory(["*"], [(names[i], 0, 0) for i in range(k)], [0], comp,
                       name=name or f"monoid{k}")


def cyclic_group_category(n):
    mult = [[(a + b) % n for b in range(n)] for a in range(n)]
    return monoid_category(mult, name=f"Z{n}")


def parallel_pair():
    """Two objects and two parallel non-identity arrows; its groupoid is infinite."""
    morphisms = [("1_0", 0, 0), ("1_1", 1, 1), ("u", 0, 1), ("v", 0, 1)]
    comp = {(0, 0): 0, (1, 1): 1, (2, 0): 2, (3, 0): 3, (1, 2): 2, (1, 3): 3}
    return FinCategory(2, morphisms, [0, 1], comp, name="parallel_pair")


def product_category(C, D):
    """``C x D`` with object id ``a * D.n_obj + b`` and morphism id ``f * D.n_mor + g``."""
    objects = [f"({a},{b})" for a in C.obj_names for b in D.obj_names]
    morphisms = []
    for f in C.morphisms:
        for g in D.morphisms:
            morphisms.append((f"({C.mor_names[f]},{D.mor_names[g]})",
                              C.src[f] * D.n_obj + D.src[g], C.tgt[f] * D.n_obj + D.tgt[g]))
    ident = [C.ident[a] * D.n_mor + D.ident[b] for a in C.objects for b in D.objects]
    comp = {}
    for (f2, f1), f in C.comp.items():
        for (g2, g1), g in D.comp.items():
            comp[f2 * D.n_mor + g2, f1 * D.n_mor + g1] = f * D.n_mor + g
    return FinCategory(objects, morphisms, ident, comp)


# -- functors --------------------------------------------------------------


class FinFunctor:
    def __init__(self, dom, cod, obj_map, mor_map):
        self.dom = dom
        self.cod = cod
        self.obj = tuple(obj_map)
        self.mor = tuple(mor_map)

    def __call__(self, m):
        return self.mor[m]

    def then(self, other):
        """``other . self``."""
        return FinFunctor(self.dom, other.cod,
                          [other.obj[x] for x in self.obj],
                          [other.mor[f] for f in self.mor])

    def __eq__(self, other):
        return (isinstance(other, FinFunctor) and self.obj == other.obj
                and self.mor == other.mor and self.dom == other.dom and self.cod == other.cod)

    def __hash__(self):
        return hash((self.obj, self.mor))

    def __repr__(self):
        return f"FinFunctor(obj={self.obj}, mor={self.mor})"


def identity_functor(C):
    return FinFunctor(C, C, C.objects, C.morphisms)


def compose_functors(G, F):
    """``G . F``."""
    if F.cod != G.dom:
        raise ShapeMismatch("functors are not composable")
    return F.then(G)


def functor_power(F, n):
    out = identity_functor(F.dom)
    for _ in range(n):
        out = out.then(F)
    return out


def check_functor(F):
    C, D = F.dom, F.cod
    if len(F.obj) != C.n_obj or len(F.mor) != C.n_mor:
        return Check.failed("table sizes")
    for f in C.morphisms:
        if D.src[F.mor[f]] != F.obj[C.src[f]] or D.tgt[F.mor[f]] != F.obj[C.tgt[f]]:
            return Check.failed("source/target", f)
    for x in C.objects:
        if F.mor[C.ident[x]] != D.ident[F.obj[x]]:
            return Check.failed("identity", x)
    for (g, f), gf in C.comp.items():
        if F.mor[gf] != D.comp[F.mor[g], F.mor[f]]:
            return Check.failed("composite", g, f)
    return Check.passed()


# -- natural transformations -----------------------------------------------


class NatTrans:
    def __init__(self, src, tgt, components):
        self.src = src
        self.tgt = tgt
        self.comp = tuple(components)

    def __getitem__(self, x):
        return self.comp[x]

    def __eq__(self, other):
        return isinstance(other, NatTrans) and self.comp == other.comp \
            and self.src == other.src and self.tgt == other.tgt

    def __hash__(self):
        return hash(self.comp)

    def __repr__(self):
        return f"NatTrans({self.comp})"


def identity_nat(F):
    return NatTrans(F, F, [F.cod.ident[F.obj[x]] for x in F.dom.objects])


def vertical(beta, alpha):
    """``beta . alpha`` for ``alpha: F => G`` and ``beta: G => H``."""
    D = alpha.src.cod
    return NatTrans(alpha.src, beta.tgt,
                    [D.comp[beta[x], alpha[x]] for x in alpha.src.dom.objects])


def whisker_left(H, alpha):
    """``H alpha``: apply the functor ``H`` to every component."""
    return NatTrans(alpha.src.then(H), alpha.tgt.then(H), [H.mor[c] for c in alpha.comp])


def whisker_right(alpha, K):
    """``alpha K``: precompose with the functor ``K``."""
    return NatTrans(K.then(alpha.src), K.then(alpha.tgt), [alpha[K.obj[x]] for x in K.dom.objects])


def check_nat(alpha):
    F, G = alpha.src, alpha.tgt
    C, D = F.dom, F.cod
    if G.dom != C or G.cod != D or len(alpha.comp) != C.n_obj:
        raise ShapeMismatch("natural transformation between functors of different shapes")
    for x in C.objects:
        c = alpha[x]
        if D.src[c] != F.obj[x] or D.tgt[c] != G.obj[x]:
            return Check.failed("component type", x)
    for f in C.morphisms:
        a, b = C.src[f], C.tgt[f]
        if D.comp[G.mor[f], alpha[a]] != D.comp[alpha[b], F.mor[f]]:
            return Check.failed("naturality", f)
    return Check.passed()


# -- comonads and distributive laws ----------------------------------------


class Comonad:
    def __init__(self, base, endo, comult, counit):
        self.base = base
        self.endo = endo
        self.comult = comult
        self.counit = counit
        self._powers = {0: identity_functor(base), 1: endo}

    def power(self, n):
        if n not in self._powers:
            self._powers[n] = self.power(n - 1).then(self.endo)
        return self._powers[n]

    def __eq__(self, other):
        return isinstance(other, Comonad) and self.endo == other.endo \
            and self.comult == other.comult and self.counit == other.counit

    def __hash__(self):
        return hash((self.endo, self.comult.comp, self.counit.comp))

    def __repr__(self):
        return f"Comonad(obj={self.endo.obj}, mor={self.endo.mor}, delta={self.comult.comp}, eps={self.counit.comp})"


def identity_comonad(C):
    I = identity_functor(C)
    return Comonad(C, I, identity_nat(I), identity_nat(I))


def _comonad_shape(c):
    C, G = c.base, c.endo
    if G.dom != C or G.cod != C:
        raise ShapeMismatch("comonad endofunctor is not an endofunctor of the base")
    GG = G.then(G)
    if c.comult.src != G or c.comult.tgt != GG:
        raise ShapeMismatch("comultiplication must have shape G => GG")
    if c.counit.src != G or c.counit.tgt != identity_functor(C):
        raise ShapeMismatch("counit must have shape G => 1")


def comonad_laws(C, G, delta, eps):
    """Law check on raw component tuples; shared with the enumerator."""
    comp, gm, go = C.comp, G.mor, G.obj
    for x in C.objects:
        d = delta[x]
        gx = go[x]
        idg = C.ident[gx]
        if comp[eps[gx], d] != idg:
            return Check.failed("counit law (eps G) . delta = 1", x)
        if comp[gm[eps[x]], d] != idg:
            return Check.failed("counit law (G eps) . delta = 1", x)
        if comp[delta[gx], d] != comp[gm[d], d]:
            return Check.failed("coassociativity", x)
    return Check.passed()


def check_comonad(c):
    _comonad_shape(c)
    for alpha in (c.comult, c.counit):
        r = check_nat(alpha)
        if not r:
            return Check.failed(f"naturality of {'comultiplication' if alpha is c.comult else 'counit'}",
                                *r.witness)
    return comonad_laws(c.base, c.endo, c.comult.comp, c.counit.comp)


class DistributiveLaw:
    """``lam: g h => h g`` between two comonads on the same base."""

    def __init__(self, g, h, lam):
        self.g = g
        self.h = h
        self.lam = lam

    def __eq__(self, other):
        return isinstance(other, DistributiveLaw) and self.g == other.g \
            and self.h == other.h and self.lam == other.lam

    def __hash__(self):
        return hash(self.lam)

    def __repr__(self):
        return f"DistributiveLaw(lam={self.lam.comp})"


def distributive_axioms(C, g, h, lam):
    """The four compatibility equations, evaluated at every object."""
    comp = C.comp
    gm, hm, go, ho = g.endo.mor, h.endo.mor, g.endo.obj, h.endo.obj
    eg, eh, dg, dh = g.counit, h.counit, g.comult, h.comult
    for x in C.objects:
        l = lam[x]
        if comp[eh[go[x]], l] != gm[eh[x]]:
            return Check.failed("counit of h", x)
        if comp[hm[eg[x]], l] != eg[ho[x]]:
            return Check.failed("counit of g", x)
        lhs = comp[hm[l], comp[lam[ho[x]], gm[dh[x]]]]
        if lhs != comp[dh[go[x]], l]:
            return Check.failed("comultiplication of h", x)
        lhs = comp[lam[go[x]], comp[gm[l], dg[ho[x]]]]
        if lhs != comp[hm[dg[x]], l]:
            return Check.failed("comultiplication of g", x)
    return Check.passed()


def check_distributive_law(d):
    if d.g.base != d.h.base:
        raise ShapeMismatch("comonads live on different bases")
    gh = d.h.endo.then(d.g.endo)
    hg = d.g.endo.then(d.h.endo)
    if d.lam.src != gh or d.lam.tgt != hg:
        raise ShapeMismatch("distributive law must have shape gh => hg")
    r = check_nat(d.lam)
    if not r:
        return Check.failed("naturality of lambda", *r.witness)
    return distributive_axioms(d.g.base, d.g, d.h, d.lam)


# -- adjunctions -----------------------------------------------------------


class Adjunction:
    """``left -| right`` with ``unit: 1 => right.left`` and ``counit: left.right => 1``."""

    def __init__(self, left, right, unit, counit):
        self.left = left
        self.right = right
        self.unit = unit
        self.counit = counit

    def __eq__(self, other):
        return isinstance(other, Adjunction) and self.left == other.left and \
            self.right == other.right and self.unit == other.unit and self.counit == other.counit

    def __repr__(self):
        return f"Adjunction(left={self.left}, unit={self.unit.comp}, counit={self.counit.comp})"


def check_adjunction(a):
    L, R = a.left, a.right
    D, C = L.dom, L.cod
    if R.dom != C or R.cod != D:
        raise ShapeMismatch("left and right adjoint do not point in opposite directions")
    if a.unit.src != identity_functor(D) or a.unit.tgt != L.then(R):
        raise ShapeMismatch("unit must have shape 1 => RL")
    if a.counit.src != R.then(L) or a.counit.tgt != identity_functor(C):
        raise ShapeMismatch("counit must have shape LR => 1")
    for alpha, label in ((a.unit, "unit"), (a.counit, "counit")):
        r = check_nat(alpha)
        if not r:
            return Check.failed(f"naturality of {label}", *r.witness)
    return triangle_identities(L, R, a.unit.comp, a.counit.comp)


def triangle_identities(L, R, eta, eps):
    D, C = L.dom, L.cod
    for d in D.objects:
        if C.comp[eps[L.obj[d]], L.mor[eta[d]]] != C.ident[L.obj[d]]:
            return Check.failed("triangle (eps L) . (L eta) = 1", d)
    for c in C.objects:
        if D.comp[R.mor[eps[c]], eta[R.obj[c]]] != D.ident[R.obj[c]]:
            return Check.failed("triangle (R eps) . (eta R) = 1", c)
    return Check.passed()


# -- enumeration -----------------------------------------------------------


def enumerate_functors(C, D, budget=None, obj_maps=None):
    """All functors ``C -> D`` in lexicographic order of (object table, morphism table)."""
    budget = as_budget(budget)
    order = [f for f in C.morphisms if not C.is_identity(f)]
    pos = {f: k for k, f in enumerate(order)}
    for x in C.objects:
        pos[C.ident[x]] = -1
    checks = [[] for _ in order]
    for (g, f), gf in C.comp.items():
        p = max(pos[g], pos[f], pos[gf])
        if p >= 0:
            checks[p].append((g, f, gf))
    maps = obj_maps if obj_maps is not None else product(D.objects, repeat=C.n_obj)
    for om in maps:
        mor = [None] * C.n_mor
        for x in C.objects:
            mor[C.ident[x]] = D.ident[om[x]]
        yield from _assign_morphisms(C, D, om, mor, order, checks, 0, budget)


def _assign_morphisms(C, D, om, mor, order, checks, k, budget):
    if k == len(order):
        yield FinFunctor(C, D, om, mor)
        return
    f = order[k]
    for cand in D.hom(om[C.src[f]], om[C.tgt[f]]):
        budget.spend()
        mor[f] = cand
        if all(D.comp[mor[g], mor[h]] == mor[gh] for g, h, gh in checks[k]):
            yield from _assign_morphisms(C, D, om, mor, order, checks, k + 1, budget)
    mor[f] = None


def enumerate_nat_trans(F, G, budget=None):
    """All natural transformations ``F => G`` in lexicographic component order."""
    budget = as_budget(budget)
    C, D = F.dom, F.cod
    checks = [[] for _ in C.objects]
    for f in C.morphisms:
        checks[max(C.src[f], C.tgt[f])].append(f)
    comps = [None] * C.n_obj

    def rec(x):
        if x == C.n_obj:
            yield NatTrans(F, G, comps)
            return
        for c in D.hom(F.obj[x], G.obj[x]):
            budget.spend()
            comps[x] = c
            if all(D.comp[G.mor[f], comps[C.src[f]]] == D.comp[comps[C.tgt[f]], F.mor[f]]
                   for f in checks[x]):
                yield from rec(x + 1)
        comps[x] = None

    yield from rec(0)


def enumerate_comonads(base, budget=None):
    budget = as_budget(budget)
    out = []
    one = identity_functor(base)
    for G in enumerate_functors(base, base, budget):
        GG = G.then(G)
        counits = list(enumerate_nat_trans(G, one, budget))
        if not counits:
            continue
        comults = list(enumerate_nat_trans(G, GG, budget))
        for delta in comults:
            for eps in counits:
                budget.spend()
                if comonad_laws(base, G, delta.comp, eps.comp):
                    out.append(Comonad(base, G, delta, eps))
    return out


def enumerate_distributive_laws(g, h, budget=None):
    if g.base != h.base:
        raise ShapeMismatch("comonads live on different bases")
    budget = as_budget(budget)
    gh = h.endo.then(g.endo)
    hg = g.endo.then(h.endo)
    out = []
    for lam in enumerate_nat_trans(gh, hg, budget):
        budget.spend()
        if distributive_axioms(g.base, g, h, lam):
            out.append(DistributiveLaw(g, h, lam))
    return out

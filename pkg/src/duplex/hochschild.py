"""Degree-zero Hochschild theory for finite rings and finite bimodules."""

from itertools import product

from .abelian import (
    AbTable,
    AbTarget,
    FinAb,
    Hom,
    PresentedAbGroup,
    check_abelian_table,
    enumerate_homs,
    expand_pure_tensor,
    table_from_group,
    tensor_factors,
)
from .budget import as_budget
from .errors import BudgetExceeded, InvalidStructure, ShapeMismatch
from .report import Check
from .simplicial import OpTarget, TruncAugSimplicial

MAX_GENERATORS = 4096


class FinRing:
    """A ring on ``range(n)`` given by addition and multiplication tables."""

    def __init__(self, add, mul, zero=0, one=1, name=None, validate=True):
        self.add = tuple(tuple(r) for r in add)
        self.mul = tuple(tuple(r) for r in mul)
        self.zero, self.one, self.name = zero, one, name
        self.n = len(self.add)
        if validate:
            bad = ring_axioms(self)
            if bad:
                raise InvalidStructure(f"not a ring: {bad[0]} fails", bad[1:])
        self.ab = AbTable(self.add, zero)

    @property
    def elements(self):
        return range(self.n)

    def times(self, a, b):
        return self.mul[a][b]

    def is_commutative(self):
        return all(self.mul[a][b] == self.mul[b][a] for a in self.elements for b in self.elements)

    def __repr__(self):
        return f"FinRing({self.name or self.n})"


def ring_axioms(R):
    """First failing axiom as ``(label, *witness)`` or None, by full table scan."""
    n = len(R.add)
    if len(R.mul) != n or any(len(r) != n for r in R.mul):
        return ("shape",)
    bad = check_abelian_table(R.add, R.zero)
    if bad:
        return (f"additive {bad}",)
    rng = range(n)
    m, p = R.mul, R.add
    for a in rng:
        if m[R.one][a] != a or m[a][R.one] != a:
            return ("unit", a)
    for a, b, c in product(rng, repeat=3):
        if m[m[a][b]][c] != m[a][m[b][c]]:
            return ("associativity", a, b, c)
        if m[a][p[b][c]] != p[m[a][b]][m[a][c]]:
            return ("left distributivity", a, b, c)
        if m[p[a][b]][c] != p[m[a][c]][m[b][c]]:
            return ("right distributivity", a, b, c)
    return None


class FinBimoduleAb:
    """``left[a][x] = ax`` and ``right[x][a] = xa`` over a :class:`FinRing`."""

    def __init__(self, ring, add, left, right, zero=0, name=None, validate=True):
        self.ring = ring
        self.add = tuple(tuple(r) for r in add)
        self.left = tuple(tuple(r) for r in left)
        self.right = tuple(tuple(r) for r in right)
        self.zero, self.name = zero, name
        self.n = len(self.add)
        if validate:
            bad = bimodule_axioms(self)
            if bad:
                raise InvalidStructure(f"not a bimodule: {bad[0]} fails", bad[1:])
        self.ab = AbTable(self.add, zero)

    @property
    def elements(self):
        return range(self.n)

    def act(self, a, x, b=None):
        """``a x`` or ``a x b``."""
        y = self.left[a][x]
        return y if b is None else self.right[y][b]

    def ract(self, x, a):
        return self.right[x][a]

    def __repr__(self):
        return f"FinBimoduleAb({self.name or self.n} over {self.ring!r})"


def bimodule_axioms(X):
    A = X.ring
    n = len(X.add)
    if len(X.left) != A.n or any(len(r) != n for r in X.left) or \
            len(X.right) != n or any(len(r) != A.n for r in X.right):
        return ("shape",)
    bad = check_abelian_table(X.add, X.zero)
    if bad:
        return (f"additive {bad}",)
    L, R, p = X.left, X.right, X.add
    for x in range(n):
        if L[A.one][x] != x or R[x][A.one] != x:
            return ("unit action", x)
    for a, b in product(A.elements, repeat=2):
        ab, a_b = A.mul[a][b], A.add[a][b]
        for x in range(n):
            if L[ab][x] != L[a][L[b][x]]:
                return ("left associativity", a, b, x)
            if R[x][ab] != R[R[x][a]][b]:
                return ("right associativity", x, a, b)
            if R[L[a][x]][b] != L[a][R[x][b]]:
                return ("commuting actions", a, x, b)
            if L[a_b][x] != p[L[a][x]][L[b][x]] or R[x][a_b] != p[R[x][a]][R[x][b]]:
                return ("additivity in the ring", a, b, x)
    for a in A.elements:
        for x, y in product(range(n), repeat=2):
            if L[a][p[x][y]] != p[L[a][x]][L[a][y]] or R[p[x][y]][a] != p[R[x][a]][R[y][a]]:
                return ("additivity in the module", a, x, y)
    return None


# -- fixtures --------------------------------------------------------------


def zmod_ring(n):
    rng = range(n)
    return FinRing([[(a + b) % n for b in rng] for a in rng], [[a * b % n for b in rng] for a in rng],
                   0, 1 % n, name=f"Z/{n}")


def _encode(vals, p):
    out = 0
    for v in reversed(vals):
        out = out * p + v
    return out


def _decode(code, p, k):
    out = []
    for _ in range(k):
        out.append(code % p)
        code //= p
    return out


def matrix_ring(k, p):
    """``M_k(F_p)``; an element is the base-``p`` code of its row-major entries."""
    size = p ** (k * k)
    mats = [_decode(c, p, k * k) for c in range(size)]

    def mul(A, B):
        return [sum(A[i * k + l] * B[l * k + j] for l in range(k)) % p for i in range(k) for j in range(k)]

    add = [[_encode([(x + y) % p for x, y in zip(A, B)], p) for B in mats] for A in mats]
    mult = [[_encode(mul(A, B), p) for B in mats] for A in mats]
    one = _encode([int(i == j) for i in range(k) for j in range(k)], p)
    return FinRing(add, mult, 0, one, name=f"M{k}(F{p})")


def polynomial_quotient_ring(p, modulus):
    """``F_p[x]/(m(x))`` for a monic ``m`` given by its non-leading coefficients, low degree first."""
    d = len(modulus)
    els = [_decode(c, p, d) for c in range(p ** d)]

    def mul(u, v):
        prod = [0] * (2 * d - 1)
        for i, a in enumerate(u):
            for j, b in enumerate(v):
                prod[i + j] += a * b
        for top in range(2 * d - 2, d - 1, -1):
            c = prod[top]
            prod[top] = 0
            for i, m in enumerate(modulus):
                prod[top - d + i] -= c * m
        return [c % p for c in prod[:d]]

    add = [[_encode([(a + b) % p for a, b in zip(u, v)], p) for v in els] for u in els]
    mult = [[_encode(mul(u, v), p) for v in els] for u in els]
    return FinRing(add, mult, 0, 1, name=f"F{p}[x]/{tuple(modulus)}")


def product_ring(R, S):
    pairs = [(a, b) for a in R.elements for b in S.elements]
    idx = {q: i for i, q in enumerate(pairs)}
    add = [[idx[R.add[a][c], S.add[b][d]] for (c, d) in pairs] for (a, b) in pairs]
    mul = [[idx[R.mul[a][c], S.mul[b][d]] for (c, d) in pairs] for (a, b) in pairs]
    return FinRing(add, mul, idx[R.zero, S.zero], idx[R.one, S.one], name=f"{R.name}x{S.name}")


def ring_fixtures():
    """Named finite rings; the commutative ones satisfy ``H_0 = H^0 = A``."""
    return {
        "Z/2": zmod_ring(2),
        "Z/3": zmod_ring(3),
        "Z/4": zmod_ring(4),
        "Z/6": zmod_ring(6),
        "F4": polynomial_quotient_ring(2, [1, 1]),
        "F2[x]/x^2": polynomial_quotient_ring(2, [0, 0]),
        "F3[x]/x^2": polynomial_quotient_ring(3, [0, 0]),
        "Z/2xZ/2": product_ring(zmod_ring(2), zmod_ring(2)),
        "M2(F2)": matrix_ring(2, 2),
    }


def regular_bimodule(A):
    return FinBimoduleAb(A, A.add, A.mul, A.mul, A.zero, name="regular")


def zero_bimodule(A):
    return FinBimoduleAb(A, [[0]], [[0] for _ in A.elements], [[0] * A.n], 0, name="0")


def bimodule_from_maps(A, add, left, right, zero=0, name=None):
    """Tables from callables ``left(a, x)`` and ``right(x, a)``."""
    n = len(add)
    return FinBimoduleAb(A, add, [[left(a, x) for x in range(n)] for a in A.elements],
                         [[right(x, a) for a in A.elements] for x in range(n)], zero, name=name)


def quotient_bimodule_zmod(n, m):
    """``Z/m`` as a bimodule over ``Z/n`` for ``m | n`` (actions through reduction)."""
    if n % m:
        raise ShapeMismatch("need m | n")
    return bimodule_from_maps(zmod_ring(n), [[(a + b) % m for b in range(m)] for a in range(m)],
                              lambda a, x: a * x % m, lambda x, a: x * a % m, name=f"Z/{m}")


# -- the complex -----------------------------------------------------------


def _coords_all(tab):
    return [tab.coords(a) for a in range(tab.n)]


def chain_level(A, X, n):
    """Tensor basis and group of ``A^(x)n (x) X``."""
    basis = tensor_factors(*([A.ab.group] * n), X.ab.group)
    return basis, FinAb(tuple(g for _, g in basis))


def _chain_face(A, X, n, i, a, x):
    """``d_i(a_1 (x) ... (x) a_n (x) x)`` as ``(ring elements, module element)``."""
    if i == 0:
        return a[1:], X.right[x][a[0]]
    if i == n:
        return a[:-1], X.left[a[-1]][x]
    return a[:i - 1] + (A.mul[a[i - 1]][a[i]],) + a[i + 1:], x


def _chain_degen(A, n, j, a, x):
    return a[:j] + (A.one,) + a[j:], x


def _levelwise(A, X, N, budget):
    levels = {}
    for n in range(N + 1):
        basis, G = chain_level(A, X, n)
        if len(basis) > budget:
            raise BudgetExceeded(f"level {n} needs {len(basis)} generators (cap {budget})")
        levels[n] = (basis, G)
    return levels


def hochschild_complex(A, X, N, variant="chain", max_generators=MAX_GENERATORS):
    """Truncated Hochschild (co)simplicial group of ``X`` up to level ``N``.

    The chain variant lives in finite abelian groups; the cochain variant is the
    cosimplicial group of maps ``A^(x)n -> X``, stored as a simplicial object in
    the opposite target.
    """
    if variant == "chain":
        return _chain_complex(A, X, N, max_generators)
    if variant == "cochain":
        return _cochain_complex(A, X, N, max_generators)
    raise ValueError(f"variant must be chain or cochain, not {variant!r}")


def _chain_complex(A, X, N, cap):
    levels = _levelwise(A, X, N, cap)
    agens = A.ab.basis()
    xgens = X.ab.basis()
    acoord, xcoord = _coords_all(A.ab), _coords_all(X.ab)

    def hom(n, m, fn):
        (basis, G), (cbasis, H) = levels[n], levels[m]
        imgs = []
        for idx, _ in basis:
            a = tuple(agens[k] for k in idx[:-1])
            b, y = fn(a, xgens[idx[-1]])
            imgs.append(expand_pure_tensor(cbasis, [acoord[c] for c in b] + [xcoord[y]]))
        return Hom(G, H, tuple(imgs))

    faces = {n: tuple(hom(n, n - 1, lambda a, x, n=n, i=i: _chain_face(A, X, n, i, a, x))
                      for i in range(n + 1)) for n in range(1, N + 1)}
    degens = {n: tuple(hom(n, n + 1, lambda a, x, n=n, j=j: _chain_degen(A, n, j, a, x))
                       for j in range(n + 1)) for n in range(N)}
    return TruncAugSimplicial(AbTarget(), N, {n: levels[n][1] for n in levels}, faces, degens,
                              meta={"kind": "hochschild", "variant": "chain", "bases": levels})


def cochain_level(A, X, n):
    """Basis of ``[A^(x)n, X]``: pairs ``(k, j, h)`` with ``h = gcd`` of the orders."""
    tbasis = tensor_factors(*([A.ab.group] * n))
    xf = X.ab.group.factors
    basis = []
    for k, (_, g) in enumerate(tbasis):
        for j, d in enumerate(xf):
            h = _gcd(g, d)
            if h != 1:
                basis.append((k, j, h))
    return tbasis, basis, FinAb(tuple(h for _, _, h in basis))


def _gcd(a, b):
    from math import gcd
    return gcd(a, b)


def _cochain_complex(A, X, N, cap):
    levels = {}
    for n in range(N + 1):
        tb, cb, G = cochain_level(A, X, n)
        if len(cb) > cap:
            raise BudgetExceeded(f"level {n} needs {len(cb)} generators (cap {cap})")
        levels[n] = (tb, cb, G)
    GX = X.ab.group
    acoord = _coords_all(A.ab)
    agens = A.ab.basis()

    def values(n, c):
        """Cochain coordinates -> values on the tensor basis, as a Hom into ``GX``."""
        tb, cb, G = levels[n]
        vals = [[0] * GX.rank for _ in tb]
        for coef, (k, j, h) in zip(c, cb):
            vals[k][j] += coef * (GX.factors[j] // h)
        return Hom(FinAb(tuple(g for _, g in tb)), GX, tuple(tuple(v) for v in vals))

    def coords(n, f_on_basis):
        tb, cb, G = levels[n]
        out = []
        for k, j, h in cb:
            step = GX.factors[j] // h
            v = f_on_basis[k][j]
            if v % step:
                raise ShapeMismatch("value is not a homomorphism on the tensor basis")
            out.append(v // step)
        return G.norm(tuple(out))

    def evaluate(n, f, elems):
        tb = levels[n][0]
        return X.ab.elem(f(expand_pure_tensor(tb, [acoord[a] for a in elems])))

    def delta(n, i):
        # C^n -> C^{n+1}
        _, _, G = levels[n]
        tb1, _, H = levels[n + 1]
        imgs = []
        for gen in G.gens():
            f = values(n, gen)
            out = []
            for idx, _ in tb1:
                a = tuple(agens[k] for k in idx)
                if i == 0:
                    y = X.right[evaluate(n, f, a[:-1])][a[-1]]
                elif i == n + 1:
                    y = X.left[a[0]][evaluate(n, f, a[1:])]
                else:
                    # indices mirror the chain side: delta_i multiplies the pair i steps from the right
                    q = n - i
                    y = evaluate(n, f, a[:q] + (A.mul[a[q]][a[q + 1]],) + a[q + 2:])
                out.append(X.ab.coords(y))
            imgs.append(coords(n + 1, out))
        return Hom(G, H, tuple(imgs))

    def sigma(n, j):
        # C^{n+1} -> C^n, inserting 1 at position j (counting from the right end)
        _, _, G = levels[n + 1]
        tb, _, H = levels[n]
        imgs = []
        for gen in G.gens():
            f = values(n + 1, gen)
            out = []
            for idx, _ in tb:
                a = tuple(agens[k] for k in idx)
                pos = n - j
                out.append(X.ab.coords(evaluate(n + 1, f, a[:pos] + (A.one,) + a[pos:])))
            imgs.append(coords(n, out))
        return Hom(G, H, tuple(imgs))

    faces = {n: tuple(delta(n - 1, i) for i in range(n + 1)) for n in range(1, N + 1)}
    degens = {n: tuple(sigma(n, j) for j in range(n + 1)) for n in range(N)}
    return TruncAugSimplicial(OpTarget(AbTarget()), N, {n: levels[n][2] for n in levels}, faces, degens,
                              meta={"kind": "hochschild", "variant": "cochain", "bases": levels})


# -- H_0 and H^0 -----------------------------------------------------------


def _factor_relations(G):
    return [[d if i == j else 0 for j in range(G.rank)] for i, d in enumerate(G.factors)]


def zeroth_homology(A, X):
    """``X`` modulo the subgroup generated by ``ax - xa``, on the generators of ``X``."""
    G = X.ab.group
    rels = _factor_relations(G)
    for a in A.elements:
        for x in X.ab.basis():
            rels.append(list(X.ab.coords(X.ab.minus(X.left[a][x], X.right[x][a]))))
    return PresentedAbGroup(G.rank, rels)


def homology_projection(A, X, H=None):
    """Carrier element of ``X`` -> coordinates in ``H_0(A, X)``."""
    H = H or zeroth_homology(A, X)
    return [H.proj(X.ab.coords(x)) for x in X.elements]


def coequalizer_of_complex(C):
    """Coequalizer of ``d_0, d_1: C_1 -> C_0`` for a chain complex in finite abelian groups."""
    G = C.levels[0]
    d0, d1 = C.d(1, 0), C.d(1, 1)
    rels = _factor_relations(G)
    for g in C.levels[1].gens():
        rels.append([u - v for u, v in zip(d0(g), d1(g))])
    return PresentedAbGroup(G.rank, rels)


class Subgroup:
    """A subgroup of a table group, by its carrier elements."""

    def __init__(self, parent, elements):
        self.parent = parent
        self.elements = tuple(sorted(elements))

    @property
    def order(self):
        return len(self.elements)

    @property
    def group(self):
        idx = {e: i for i, e in enumerate(self.elements)}
        add = [[idx[self.parent.plus(a, b)] for b in self.elements] for a in self.elements]
        return AbTable(add, idx[self.parent.zero]).group

    @property
    def invariant_factors(self):
        return self.group.factors

    def __contains__(self, x):
        return x in self.elements

    def __repr__(self):
        return f"Subgroup({list(self.elements)})"


def zeroth_cohomology(A, X):
    """``{x : ax = xa for all a}``, by enumeration."""
    return Subgroup(X.ab, [x for x in X.elements
                           if all(X.left[a][x] == X.right[x][a] for a in A.elements)])


def equalizer_of_complex(C, X):
    """Elements of ``X`` where ``delta_0`` and ``delta_1`` of the cochain complex agree."""
    d0, d1 = C.d(1, 0), C.d(1, 1)
    keep = [x for x in X.elements if d0(X.ab.coords(x)) == d1(X.ab.coords(x))]
    return Subgroup(X.ab, keep)


def induced_homology_map(A, X, Y, theta):
    """A bimodule map ``theta`` (carrier list) induces ``H_0(X) -> H_0(Y)`` on generators."""
    HX, HY = zeroth_homology(A, X), zeroth_homology(A, Y)
    lift = {}
    for x in X.elements:
        lift.setdefault(HX.proj(X.ab.coords(x)), x)
    imgs = []
    for gen in HX.group.gens():
        imgs.append(HY.proj(Y.ab.coords(theta[lift[gen]])))
    return Hom(HX.group, HY.group, tuple(imgs)), HX, HY


def is_bimodule_map(X, Y, theta):
    """``theta`` is a carrier-level list ``X -> Y``."""
    A = X.ring
    if any(theta[X.add[x][y]] != Y.add[theta[x]][theta[y]] for x in X.elements for y in X.elements):
        return False
    return all(theta[X.left[a][x]] == Y.left[a][theta[x]] and theta[X.right[x][a]] == Y.right[theta[x]][a]
               for a in A.elements for x in X.elements)


# -- the two adjunctions ---------------------------------------------------


def _table_bimodule(A, G, left_hom, right_hom, name):
    """Bimodule on the elements of a FinAb ``G`` with actions given as per-ring-element Homs."""
    add, els = table_from_group(G)
    idx = {e: i for i, e in enumerate(els)}
    left = [[idx[left_hom[a](e)] for e in els] for a in A.elements]
    right = [[idx[right_hom[a](e)] for a in A.elements] for e in els]
    return FinBimoduleAb(A, add, left, right, idx[G.zero], name=name), els


def coinduced_bimodule(A, P):
    """``[A, P]`` with ``(af)(b) = f(ba)`` and ``(fa)(b) = f(ab)``."""
    GA = A.ab.group
    homs = enumerate_homs(GA, P)
    els = list(homs)
    idx = {h: i for i, h in enumerate(els)}

    def act(f, mult):
        return Hom(GA, P, tuple(f(A.ab.coords(mult(b))) for b in A.ab.basis()))

    add = [[idx[Hom(GA, P, tuple(P.add(u, v) for u, v in zip(f.images, g.images)))] for g in els] for f in els]
    left = [[idx[act(f, lambda b, a=a: A.mul[b][a])] for f in els] for a in A.elements]
    right = [[idx[act(f, lambda b, a=a: A.mul[a][b])] for a in A.elements] for f in els]
    zero = idx[Hom(GA, P, tuple(P.zero for _ in GA.factors))]
    return FinBimoduleAb(A, add, left, right, zero, name="[A,P]"), els


def tensor_bimodule(A, P):
    """``A (x) P`` with ``a(b (x) p) = ab (x) p`` and ``(b (x) p)a = ba (x) p``."""
    GA = A.ab.group
    basis = tensor_factors(GA, P)
    T = FinAb(tuple(g for _, g in basis))
    agens = A.ab.basis()

    def mult_hom(fn):
        imgs = []
        for (i, j), _ in basis:
            pj = tuple(int(k == j) for k in range(P.rank))
            imgs.append(expand_pure_tensor(basis, [A.ab.coords(fn(agens[i])), pj]))
        return Hom(T, T, tuple(imgs))

    lh = {a: mult_hom(lambda b, a=a: A.mul[a][b]) for a in A.elements}
    rh = {a: mult_hom(lambda b, a=a: A.mul[b][a]) for a in A.elements}
    M, els = _table_bimodule(A, T, lh, rh, "A(x)P")
    return M, els, basis


def bimodule_maps(X, Y, budget=None):
    """Every bimodule map ``X -> Y`` as a carrier-level tuple.

    Group homomorphisms are enumerated on a cyclic basis; equivariance is then
    checked on additive generators of the ring and of ``X``, which suffices by additivity.
    """
    budget = as_budget(budget)
    A = X.ring
    xb, ab = X.ab.basis(), A.ab.basis()
    probes = [(X.ab.coords(X.left[a][x]), a, k, True) for a in ab for k, x in enumerate(xb)]
    probes += [(X.ab.coords(X.right[x][a]), a, k, False) for a in ab for k, x in enumerate(xb)]
    out = []
    for h in enumerate_homs(X.ab.group, Y.ab.group, budget):
        imgs = [Y.ab.elem(v) for v in h.images]
        ok = True
        for v, a, k, is_left in probes:
            lhs = Y.ab.elem(h(v))
            if lhs != (Y.left[a][imgs[k]] if is_left else Y.right[imgs[k]][a]):
                ok = False
                break
        if ok:
            out.append(tuple(Y.ab.elem(h(X.ab.coords(x))) for x in X.elements))
    return out


def verify_adjunctions(A, X, P, budget=None):
    """Match bimodule maps ``X -> [A,P]`` with maps ``H_0(A,X) -> P``, and
    bimodule maps ``A (x) P -> X`` with maps ``P -> H^0(A,X)``, by explicit bijections."""
    budget = as_budget(budget)
    details = {}

    # left adjoint: theta |-> (x |-> theta(x)(1))
    coind, homs_AP = coinduced_bimodule(A, P)
    thetas = bimodule_maps(X, coind, budget)
    H = zeroth_homology(A, X)
    pi = homology_projection(A, X, H)
    one = A.ab.coords(A.one)
    phi = [tuple(homs_AP[t[x]](one) for x in X.elements) for t in thetas]
    targets = {tuple(h(pi[x]) for x in X.elements): h for h in enumerate_homs(H.group, P, budget)}
    details["H_0 side"] = (len(thetas), len(targets))
    if len(set(phi)) != len(phi):
        return Check.failed("H_0 correspondence not injective", details=details)
    if set(phi) != set(targets):
        return Check.failed("H_0 correspondence not onto", details=details)
    for t, fx in zip(thetas, phi):
        # inverse: h |-> (x |-> (b |-> h[xb]))
        for x in X.elements:
            f = homs_AP[t[x]]
            for b in A.ab.basis():
                if f(A.ab.coords(b)) != fx[X.right[x][b]]:
                    return Check.failed("H_0 correspondence does not invert", x, b, details=details)

    # right adjoint: theta |-> (p |-> theta(1 (x) p))
    tens, tels, tbasis = tensor_bimodule(A, P)
    thetas2 = bimodule_maps(tens, X, budget)
    H0 = zeroth_cohomology(A, X)
    tidx = {e: i for i, e in enumerate(tels)}
    Pel = P.elements()
    unit_p = [tidx[expand_pure_tensor(tbasis, [one, p])] for p in Pel]
    psi = [tuple(t[u] for u in unit_p) for t in thetas2]
    ks = []
    for h in enumerate_homs(P, X.ab.group, budget):
        vals = tuple(X.ab.elem(h(p)) for p in Pel)
        if all(v in H0 for v in vals):
            ks.append(vals)
    details["H^0 side"] = (len(thetas2), len(ks))
    if len(set(psi)) != len(psi):
        return Check.failed("H^0 correspondence not injective", details=details)
    if set(psi) != set(ks):
        return Check.failed("H^0 correspondence not onto", details=details)
    for t, k in zip(thetas2, psi):
        # inverse: k |-> (a (x) p |-> a k(p))
        for a in A.elements:
            for pi_, p in enumerate(Pel):
                e = tidx[expand_pure_tensor(tbasis, [A.ab.coords(a), p])]
                if t[e] != X.left[a][k[pi_]]:
                    return Check.failed("H^0 correspondence does not invert", a, p, details=details)
    return Check.passed(**details)

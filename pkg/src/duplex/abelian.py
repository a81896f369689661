"""Finite abelian groups: Smith normal form, cyclic decompositions, homomorphisms.

A :class:`FinAb` is a product of cyclic groups ``Z/d_1 x ... x Z/d_k`` with
``d_1 | d_2 | ...``; a factor ``0`` stands for ``Z`` (used only for the tensor
unit). Elements are coordinate tuples. :class:`AbTable` ties an arbitrary
addition table to such a decomposition.
"""

from dataclasses import dataclass
from itertools import product
from math import gcd

from .budget import as_budget
from .errors import ShapeMismatch

# -- Smith normal form -----------------------------------------------------


def _eye(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(M):
    """Return ``(U, D, V)`` with ``U M V = D`` diagonal, ``U`` and ``V`` unimodular,
    and the diagonal entries nonnegative with each dividing the next (zeros last)."""
    A = [list(map(int, r)) for r in M]
    m = len(A)
    n = len(A[0]) if m else 0
    U, V = _eye(m), _eye(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in A:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, q):  # row dst += q row src
        if q:
            A[dst] = [a + q * b for a, b in zip(A[dst], A[src])]
            U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        if q:
            for r in A:
                r[dst] += q * r[src]
            for r in V:
                r[dst] += q * r[src]

    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            p = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                add_row(i, t, -(A[i][t] // p))
                if A[i][t]:
                    dirty = True
            for j in range(t + 1, n):
                add_col(j, t, -(A[t][j] // p))
                if A[t][j]:
                    dirty = True
            if dirty:
                # move the smallest remainder into the pivot and go again
                cands = [(abs(A[i][t]), i, t) for i in range(t + 1, m) if A[i][t]]
                cands += [(abs(A[t][j]), t, j) for j in range(t + 1, n) if A[t][j]]
                _, i, j = min(cands)
                if j == t:
                    swap_rows(t, i)
                else:
                    swap_cols(t, j)
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
    return U, A, V


def matmul(X, Y):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*Y)] for row in X]


def invariant_factors(M, ncols=None):
    """Diagonal of the Smith form, padded with zeros to ``ncols``."""
    ncols = len(M[0]) if M and ncols is None else (ncols or 0)
    if not M:
        return (0,) * ncols
    _, D, _ = smith_normal_form(M)
    return tuple(D[i][i] if i < len(D) else 0 for i in range(ncols))


# -- groups ----------------------------------------------------------------


@dataclass(frozen=True)
class FinAb:
    """``Z/d_1 x ... x Z/d_k``; ``d = 0`` means ``Z``."""

    factors: tuple

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(int(d) for d in self.factors))
        if any(d == 1 or d < 0 for d in self.factors):
            raise ShapeMismatch("factors must be 0 or at least 2")

    @property
    def rank(self):
        return len(self.factors)

    @property
    def finite(self):
        return 0 not in self.factors

    @property
    def order(self):
        out = 1
        for d in self.factors:
            out *= d
        return out if self.finite else None

    @property
    def zero(self):
        return (0,) * self.rank

    def norm(self, v):
        return tuple(a % d if d else a for a, d in zip(v, self.factors))

    def add(self, u, v):
        return self.norm(tuple(a + b for a, b in zip(u, v)))

    def neg(self, u):
        return self.norm(tuple(-a for a in u))

    def scale(self, k, u):
        return self.norm(tuple(k * a for a in u))

    def combine(self, coeffs, vectors):
        out = [0] * self.rank
        for c, v in zip(coeffs, vectors):
            if c:
                for i, a in enumerate(v):
                    out[i] += c * a
        return self.norm(out)

    def elements(self):
        if not self.finite:
            raise ShapeMismatch("cannot enumerate an infinite group")
        return [tuple(e) for e in product(*(range(d) for d in self.factors))]

    def gens(self):
        return [tuple(int(i == j) for j in range(self.rank)) for i in range(self.rank)]

    def is_normal(self):
        fs = [d for d in self.factors if d]
        return all(b % a == 0 for a, b in zip(fs, fs[1:])) and \
            all(d == 0 for d in self.factors[len(fs):])

    def __repr__(self):
        if not self.factors:
            return "0"
        return " x ".join("Z" if d == 0 else f"Z/{d}" for d in self.factors)


def trivial_group():
    return FinAb(())


def cyclic(n):
    return FinAb(() if n == 1 else (n,))


@dataclass(frozen=True)
class Hom:
    """A homomorphism given by the images of the standard generators of ``dom``."""

    dom: FinAb
    cod: FinAb
    images: tuple

    def __post_init__(self):
        imgs = tuple(self.cod.norm(tuple(v)) for v in self.images)
        object.__setattr__(self, "images", imgs)

    def __call__(self, v):
        return self.cod.combine(v, self.images)

    def well_defined(self):
        if len(self.images) != self.dom.rank or any(len(v) != self.cod.rank for v in self.images):
            return False
        return all(self.cod.scale(d, v) == self.cod.zero for d, v in zip(self.dom.factors, self.images))

    def then(self, g):
        return hom_compose(g, self)


def hom_compose(g, f):
    if f.cod != g.dom:
        raise ShapeMismatch("composable homomorphisms need matching groups")
    return Hom(f.dom, g.cod, tuple(g(v) for v in f.images))


def hom_identity(G):
    return Hom(G, G, tuple(G.gens()))


def zero_hom(G, H):
    return Hom(G, H, tuple(H.zero for _ in range(G.rank)))


def enumerate_homs(G, H, budget=None):
    """All homomorphisms ``G -> H`` of finite groups, lexicographic in generator images."""
    budget = as_budget(budget)
    Hel = H.elements()
    choices = [[v for v in Hel if H.scale(d, v) == H.zero] for d in G.factors]
    out = []
    for imgs in product(*choices):
        budget.spend()
        out.append(Hom(G, H, imgs))
    return out


class AbTarget:
    """Finite abelian groups and homomorphisms as a target for simplicial objects."""

    def compose(self, g, f):
        return hom_compose(g, f)

    def identity(self, G):
        return hom_identity(G)

    def inverse(self, f):
        if f.dom.order != f.cod.order:
            return None
        table = {f(v): v for v in f.dom.elements()}
        if len(table) != f.dom.order:
            return None
        return Hom(f.cod, f.dom, tuple(table[e] for e in f.cod.gens()))

    def check_map(self, f, dom, cod):
        return isinstance(f, Hom) and f.dom == dom and f.cod == cod and f.well_defined()

    def __eq__(self, other):
        return isinstance(other, AbTarget)

    def __hash__(self):
        return hash("ab")


# -- presentations ---------------------------------------------------------


class PresentedAbGroup:
    """``Z^ngens`` modulo the row span of ``relations``, normalized by Smith reduction.

    ``proj(x)`` sends an integer vector on the generators to coordinates in ``group``.
    """

    def __init__(self, ngens, relations):
        self.ngens = ngens
        self.relations = [list(r) for r in relations if any(r)]
        if any(len(r) != ngens for r in self.relations):
            raise ShapeMismatch("relation length must equal the generator count")
        if self.relations:
            _, D, V = smith_normal_form(self.relations)
        else:
            D, V = [], _eye(ngens)
        diag = [D[i][i] if i < len(D) and i < ngens else 0 for i in range(ngens)]
        self.diagonal = tuple(diag)
        keep = [i for i, d in enumerate(diag) if d != 1]
        self._cols = [[V[k][i] for i in keep] for k in range(ngens)]
        self.group = FinAb(tuple(diag[i] for i in keep))

    @property
    def invariant_factors(self):
        return tuple(d for d in self.group.factors if d)

    @property
    def free_rank(self):
        return self.group.factors.count(0)

    @property
    def order(self):
        return self.group.order

    def proj(self, x):
        return self.group.combine(x, self._cols)

    def gen(self, k):
        return self.group.norm(tuple(self._cols[k]))

    def __repr__(self):
        return f"PresentedAbGroup({self.group!r})"


class AbTable:
    """An abelian group on ``range(n)`` given by an addition table, with a cyclic decomposition."""

    def __init__(self, add, zero=0):
        self.add_table = tuple(tuple(r) for r in add)
        self.n = len(self.add_table)
        self.zero = zero
        self._decompose()

    def _decompose(self):
        n, add = self.n, self.add_table
        rels = [[0] * n]
        rels[0][self.zero] = 1
        for a in range(n):
            for b in range(a, n):
                r = [0] * n
                r[a] += 1
                r[b] += 1
                r[add[a][b]] -= 1
                rels.append(r)
        P = PresentedAbGroup(n, rels)
        self.group = P.group
        self._coords = tuple(P.gen(a) for a in range(n))
        self._elem = {v: a for a, v in enumerate(self._coords)}
        if len(self._elem) != n or self.group.order != n:
            raise ShapeMismatch("addition table is not an abelian group")

    def coords(self, a):
        return self._coords[a]

    def elem(self, v):
        return self._elem[self.group.norm(v)]

    def plus(self, a, b):
        return self.add_table[a][b]

    def neg(self, a):
        return self.elem(self.group.neg(self._coords[a]))

    def minus(self, a, b):
        return self.plus(a, self.neg(b))

    def scale(self, k, a):
        return self.elem(self.group.scale(k, self._coords[a]))

    def basis(self):
        """Carrier elements corresponding to the standard generators of ``group``."""
        return [self.elem(e) for e in self.group.gens()]


def check_abelian_table(add, zero=0):
    """Full scan of the abelian group axioms; returns the first failing law or None."""
    n = len(add)
    rng = range(n)
    if any(len(r) != n or any(not 0 <= v < n for v in r) for r in add):
        return "closure"
    if any(add[zero][a] != a for a in rng):
        return "unit"
    if any(add[a][b] != add[b][a] for a in rng for b in rng):
        return "commutativity"
    if any(add[add[a][b]][c] != add[a][add[b][c]] for a in rng for b in rng for c in rng):
        return "associativity"
    if any(zero not in add[a] for a in rng):
        return "inverses"
    return None


def table_from_group(G):
    """Addition table on ``G.elements()`` (in enumeration order) and the element list."""
    els = G.elements()
    idx = {e: i for i, e in enumerate(els)}
    return [[idx[G.add(a, b)] for b in els] for a in els], els


def tensor_factors(*groups):
    """Basis of a tensor product of cyclic decompositions: ``(multi_index, order)`` pairs.

    ``gcd`` treats a ``Z`` factor as neutral; basis elements of order 1 are dropped.
    """
    out = []
    for idx in product(*(range(G.rank) for G in groups)):
        g = 0
        for G, i in zip(groups, idx):
            g = gcd(g, G.factors[i])
        if g != 1:
            out.append((idx, g))
    return out


def expand_pure_tensor(basis, vectors):
    """Coordinates of ``v_1 (x) ... (x) v_k`` in a tensor basis from :func:`tensor_factors`."""
    out = []
    for idx, g in basis:
        c = 1
        for v, i in zip(vectors, idx):
            c *= v[i]
            if not c:
                break
        out.append(c % g if g else c)
    return tuple(out)

"""Truncated (augmented) simplicial objects, decalage, reversal and bar resolutions.

Levels and maps live in a *target*: a small adapter exposing ``compose(g, f)``
(``g`` after ``f``), ``identity(obj)``, ``inverse(f)`` and ``check_map``.
Targets exist for a FinCategory, for finite sets, for finite abelian groups
(see :mod:`duplex.abelian`) and for the opposite of any of those.
"""

from dataclasses import dataclass, field

from .errors import ShapeMismatch, TruncationTooShallow
from .report import Check

# -- targets ---------------------------------------------------------------


class CatTarget:
    """Objects and maps are object and morphism ids of a FinCategory."""

    def __init__(self, cat):
        self.cat = cat

    def compose(self, g, f):
        return self.cat.comp[g, f]

    def identity(self, x):
        return self.cat.ident[x]

    def inverse(self, f):
        return self.cat.inverse(f)

    def check_map(self, f, dom, cod):
        C = self.cat
        return 0 <= f < C.n_mor and C.src[f] == dom and C.tgt[f] == cod

    def __eq__(self, other):
        return isinstance(other, CatTarget) and self.cat == other.cat

    def __hash__(self):
        return hash(self.cat)


class SetTarget:
    """Objects are cardinalities; a map ``m -> n`` is a length-``m`` tuple of values below ``n``."""

    def compose(self, g, f):
        return tuple(g[i] for i in f)

    def identity(self, n):
        return tuple(range(n))

    def inverse(self, f):
        if len(set(f)) != len(f):
            return None
        inv = [0] * len(f)
        for i, v in enumerate(f):
            inv[v] = i
        return tuple(inv)

    def check_map(self, f, dom, cod):
        return isinstance(f, tuple) and len(f) == dom and all(0 <= v < cod for v in f)

    def __eq__(self, other):
        return isinstance(other, SetTarget)

    def __hash__(self):
        return hash("set")


class OpTarget:
    """The opposite of a target; cosimplicial objects are simplicial objects here."""

    def __init__(self, base):
        self.base = base

    def compose(self, g, f):
        return self.base.compose(f, g)

    def identity(self, x):
        return self.base.identity(x)

    def inverse(self, f):
        return self.base.inverse(f)

    def check_map(self, f, dom, cod):
        return self.base.check_map(f, cod, dom)

    def __eq__(self, other):
        return isinstance(other, OpTarget) and self.base == other.base

    def __hash__(self):
        return hash(("op", self.base))


def compose_all(target, *maps):
    """``compose_all(T, h, g, f) == h . g . f``."""
    out = maps[-1]
    for m in reversed(maps[:-1]):
        out = target.compose(m, out)
    return out


def power(target, f, k, obj):
    out = target.identity(obj)
    for _ in range(k):
        out = target.compose(f, out)
    return out


# -- simplicial objects ----------------------------------------------------


@dataclass(frozen=True, eq=False)
class TruncAugSimplicial:
    """Levels ``X_low .. X_N`` where ``low`` is -1 when augmented.

    ``faces[n]`` lists ``d_0 .. d_n`` out of ``X_n`` (``faces[0] == (d_0,)`` is the
    augmentation); ``degens[n]`` lists ``s_0 .. s_n: X_n -> X_{n+1}`` for ``n < N``.
    """

    target: object
    N: int
    levels: dict
    faces: dict
    degens: dict
    augmented: bool = False
    meta: dict = field(default_factory=dict, compare=False)

    @property
    def low(self):
        return -1 if self.augmented else 0

    @property
    def face_levels(self):
        return range(self.low + 1, self.N + 1)

    def d(self, n, i):
        return self.faces[n][i]

    def s(self, n, j):
        return self.degens[n][j]

    def ident(self, n):
        return self.target.identity(self.levels[n])

    def tables(self):
        return (self.N, self.augmented, tuple(sorted(self.levels.items())),
                tuple(sorted(self.faces.items())), tuple(sorted(self.degens.items())))

    def __eq__(self, other):
        return isinstance(other, TruncAugSimplicial) and self.target == other.target \
            and self.tables() == other.tables()

    def __hash__(self):
        return hash(self.tables())


def check_shape(X):
    T = X.target
    if X.N < X.low:
        raise ShapeMismatch("truncation below the lowest level")
    if set(X.levels) != set(range(X.low, X.N + 1)):
        raise ShapeMismatch("levels do not cover the truncation range")
    if set(X.faces) != set(X.face_levels):
        raise ShapeMismatch("face maps do not cover the truncation range")
    if set(X.degens) != set(range(0, X.N)):
        raise ShapeMismatch("degeneracies do not cover the truncation range")
    for n in X.face_levels:
        if len(X.faces[n]) != n + 1:
            raise ShapeMismatch(f"level {n} needs {n + 1} faces")
        for i, f in enumerate(X.faces[n]):
            if not T.check_map(f, X.levels[n], X.levels[n - 1]):
                raise ShapeMismatch(f"face d_{i} at level {n} has the wrong type", (n, i))
    for n in range(0, X.N):
        if len(X.degens[n]) != n + 1:
            raise ShapeMismatch(f"level {n} needs {n + 1} degeneracies")
        for j, s in enumerate(X.degens[n]):
            if not T.check_map(s, X.levels[n], X.levels[n + 1]):
                raise ShapeMismatch(f"degeneracy s_{j} at level {n} has the wrong type", (n, j))


def simplicial_identities(X):
    """Yield ``(label, n, i, j, lhs, rhs)`` for every in-range identity, in order."""
    T, d, s = X.target, X.d, X.s
    for n in X.face_levels:
        # d_i d_j = d_{j-1} d_i, i < j, out of X_n
        if n - 1 > X.low:
            for j in range(n + 1):
                for i in range(j):
                    yield ("d_i d_j = d_{j-1} d_i", n, i, j,
                           T.compose(d(n - 1, i), d(n, j)), T.compose(d(n - 1, j - 1), d(n, i)))
    for n in range(0, X.N - 1):
        # s_i s_j = s_{j+1} s_i, i <= j, out of X_n
        for j in range(n + 1):
            for i in range(j + 1):
                yield ("s_i s_j = s_{j+1} s_i", n, i, j,
                       T.compose(s(n + 1, i), s(n, j)), T.compose(s(n + 1, j + 1), s(n, i)))
    for n in range(0, X.N):
        # d_i s_j out of X_n, landing back in X_n
        for j in range(n + 1):
            for i in range(n + 2):
                lhs = T.compose(d(n + 1, i), s(n, j))
                if i < j:
                    yield "d_i s_j = s_{j-1} d_i", n, i, j, lhs, T.compose(s(n - 1, j - 1), d(n, i))
                elif i in (j, j + 1):
                    yield "d_i s_j = 1", n, i, j, lhs, X.ident(n)
                else:
                    yield "d_i s_j = s_j d_{i-1}", n, i, j, lhs, T.compose(s(n - 1, j), d(n, i - 1))


def check_simplicial(X):
    check_shape(X)
    for label, n, i, j, lhs, rhs in simplicial_identities(X):
        if lhs != rhs:
            return Check.failed(label, n, i, j)
    return Check.passed()


def constant_simplicial(target, obj, N, augmented=False):
    low = -1 if augmented else 0
    one = target.identity(obj)
    return TruncAugSimplicial(
        target, N,
        {n: obj for n in range(low, N + 1)},
        {n: (one,) * (n + 1) for n in range(low + 1, N + 1)},
        {n: (one,) * (n + 1) for n in range(0, N)},
        augmented,
    )


def truncate(X, M):
    if M > X.N or M < X.low:
        raise ShapeMismatch(f"cannot truncate level {X.N} object to {M}")
    return TruncAugSimplicial(
        X.target, M,
        {n: v for n, v in X.levels.items() if n <= M},
        {n: v for n, v in X.faces.items() if n <= M},
        {n: v for n, v in X.degens.items() if n < M},
        X.augmented, X.meta,
    )


# -- simplicial maps -------------------------------------------------------


@dataclass(frozen=True)
class SimplicialMap:
    dom: TruncAugSimplicial
    cod: TruncAugSimplicial
    comps: dict

    def __getitem__(self, n):
        return self.comps[n]


def identity_map(X):
    return SimplicialMap(X, X, {n: X.ident(n) for n in X.levels})


def check_simplicial_map(m):
    X, Y = m.dom, m.cod
    T = X.target
    if X.N != Y.N or X.augmented != Y.augmented or set(m.comps) != set(X.levels):
        raise ShapeMismatch("simplicial map between objects of different shapes")
    for n in sorted(X.levels):
        if not T.check_map(m[n], X.levels[n], Y.levels[n]):
            raise ShapeMismatch(f"component at level {n} has the wrong type", (n,))
    for n in X.face_levels:
        for i in range(n + 1):
            if T.compose(Y.d(n, i), m[n]) != T.compose(m[n - 1], X.d(n, i)):
                return Check.failed("commutes with faces", n, i)
    for n in range(0, X.N):
        for j in range(n + 1):
            if T.compose(Y.s(n, j), m[n]) != T.compose(m[n + 1], X.s(n, j)):
                return Check.failed("commutes with degeneracies", n, j)
    return Check.passed()


def compose_maps(b, a):
    T = a.dom.target
    return SimplicialMap(a.dom, b.cod, {n: T.compose(b[n], a[n]) for n in a.comps})


# -- decalage --------------------------------------------------------------


@dataclass(frozen=True)
class Decalage:
    obj: TruncAugSimplicial
    counit: SimplicialMap
    comult: object  # SimplicialMap, or None when the truncation leaves no room


def _dec_object(X, side):
    if side == "right":
        faces = {n: X.faces[n + 1][: n + 1] for n in range(X.low + 1, X.N)}
        degens = {n: X.degens[n + 1][: n + 1] for n in range(0, X.N - 1)}
    elif side == "left":
        faces = {n: X.faces[n + 1][1:] for n in range(X.low + 1, X.N)}
        degens = {n: X.degens[n + 1][1:] for n in range(0, X.N - 1)}
    else:
        raise ValueError(f"side must be 'right' or 'left', not {side!r}")
    levels = {n: X.levels[n + 1] for n in range(X.low, X.N)}
    return TruncAugSimplicial(X.target, X.N - 1, levels, faces, degens, X.augmented)


def dec_object(X, side="right"):
    if X.N < 1:
        raise TruncationTooShallow(f"decalage needs truncation at least 1, got {X.N}")
    return _dec_object(X, side)


def dec(X, side="right"):
    """Decalage with its counit ``Dec X -> X`` and comultiplication ``Dec X -> Dec Dec X``."""
    D = dec_object(X, side)
    last = side == "right"
    counit = SimplicialMap(D, truncate(X, X.N - 1),
                           {n: X.d(n + 1, n + 1 if last else 0) for n in D.levels})
    comult = None
    if X.N - 2 >= X.low:
        DD = _dec_object(D, side)
        comult = SimplicialMap(truncate(D, X.N - 2), DD,
                               {n: X.s(n + 1, n + 1 if last else 0) for n in DD.levels})
    return Decalage(D, counit, comult)


def dec_map(m, side="right"):
    """The action of decalage on a simplicial map: component ``m_{n+1}`` at level ``n``."""
    return SimplicialMap(dec_object(m.dom, side), dec_object(m.cod, side),
                         {n: m[n + 1] for n in range(m.dom.low, m.dom.N)})


def check_dec_comonad(X, side="right"):
    """Comonad equations for the decalage counit and comultiplication in range."""
    T = X.target
    D = dec(X, side)
    if D.comult is None:
        return Check.passed()
    # at level n, Dec(eps) and eps_Dec are the two discarded faces of X_{n+2}
    outer, inner = (lambda n: n + 2, lambda n: n + 1) if side == "right" else (lambda n: 0, lambda n: 1)
    for n in sorted(D.comult.comps):
        dlt = D.comult[n]
        if T.compose(X.d(n + 2, inner(n)), dlt) != D.obj.ident(n):
            return Check.failed("counit law (eps Dec) . delta = 1", n)
        if T.compose(X.d(n + 2, outer(n)), dlt) != D.obj.ident(n):
            return Check.failed("counit law (Dec eps) . delta = 1", n)
        if n + 2 <= X.N - 1:
            if T.compose(X.s(n + 2, inner(n)), dlt) != T.compose(X.s(n + 2, outer(n)), dlt):
                return Check.failed("coassociativity", n)
    return Check.passed()


# -- reversal --------------------------------------------------------------


def reverse(X):
    faces = {n: tuple(X.faces[n][n - i] for i in range(n + 1)) for n in X.faces}
    degens = {n: tuple(X.degens[n][n - j] for j in range(n + 1)) for n in X.degens}
    return TruncAugSimplicial(X.target, X.N, dict(X.levels), faces, degens, X.augmented, X.meta)


# -- bar resolution --------------------------------------------------------


def bar_resolution(g, f, x, N):
    """Augmented object ``f g^{n+1} x`` with ``d_i = f g^i eps g^{n-i}`` and ``s_j = f g^j delta g^{n-j}``."""
    A = g.base
    P = f.cod
    if f.dom != A:
        raise ShapeMismatch("functor domain differs from the comonad base")
    gx = [x]
    for _ in range(N + 1):
        gx.append(g.endo.obj[gx[-1]])
    levels = {n: f.obj[gx[n + 1]] for n in range(-1, N + 1)}
    faces = {n: tuple(f.mor[g.power(i).mor[g.counit[gx[n - i]]]] for i in range(n + 1))
             for n in range(0, N + 1)}
    degens = {n: tuple(f.mor[g.power(j).mor[g.comult[gx[n - j]]]] for j in range(n + 1))
              for n in range(0, N)}
    return TruncAugSimplicial(CatTarget(P), N, levels, faces, degens, True,
                              {"kind": "bar", "x": x})

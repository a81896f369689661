"""Duplicial families on truncated simplicial objects.

A family ``t_n: X_n -> X_n`` (0 <= n <= N) is duplicial when

    d_i t_{n+1} = t_n d_{i-1}   (1 <= i <= n+1),   d_0 t_{n+1} = d_{n+1},
    s_i t_n = t_{n+1} s_{i-1}   (1 <= i <= n),     s_0 t_n = t_{n+1}^2 s_n.

On an augmented object the first rule also covers ``d_0 t_0 = d_0``.
"""

from dataclasses import dataclass

from .errors import DiagramsFail, InversionFails, NotDuplicial, ShapeMismatch, TruncationTooShallow
from .report import Check
from .simplicial import SimplicialMap, check_simplicial_map, dec_object, power


@dataclass(frozen=True)
class DuplicialFamily:
    base: object
    t: dict

    @property
    def N(self):
        return self.base.N

    @property
    def target(self):
        return self.base.target

    def extra_degeneracy(self, n):
        """``s_{-1} = t_{n+1} s_n: X_n -> X_{n+1}``."""
        return self.target.compose(self.t[n + 1], self.base.s(n, n))


def _check_t_shape(F):
    X, T = F.base, F.target
    if set(F.t) != set(range(0, X.N + 1)):
        raise ShapeMismatch("t must be given at every level 0..N")
    for n, tn in F.t.items():
        if not T.check_map(tn, X.levels[n], X.levels[n]):
            raise ShapeMismatch(f"t_{n} is not an endomorphism of X_{n}", (n,))


def duplicial_relations(F):
    """Yield ``(label, n, i, lhs, rhs)`` ordered by ``(n, i)`` with eq (1) before eq (2)."""
    X, T, t = F.base, F.target, F.t
    c = T.compose
    for n in range(X.low, X.N):
        for i in range(n + 2):
            lhs = c(X.d(n + 1, i), t[n + 1])
            rhs = c(t[n], X.d(n + 1, i - 1)) if i >= 1 else X.d(n + 1, n + 1)
            yield "eq1", n, i, lhs, rhs
        if n >= 0:
            for i in range(n + 1):
                lhs = c(X.s(n, i), t[n])
                if i >= 1:
                    rhs = c(t[n + 1], X.s(n, i - 1))
                else:
                    rhs = c(t[n + 1], c(t[n + 1], X.s(n, n)))
                yield "eq2", n, i, lhs, rhs


def check_relations(F):
    _check_t_shape(F)
    for label, n, i, lhs, rhs in duplicial_relations(F):
        if lhs != rhs:
            return Check.failed(label, n, i)
    return Check.passed()


@dataclass(frozen=True)
class Classification:
    kind: str  # invalid | duplicial | paracyclic | cyclic
    N: int
    report: Check

    def __str__(self):
        return f"{self.kind}@N={self.N}"

    @property
    def valid(self):
        return self.kind != "invalid"


def classify_duplicial(F):
    r = check_relations(F)
    if not r:
        return Classification("invalid", F.N, r)
    T, X = F.target, F.base
    for n in range(0, F.N + 1):
        if T.inverse(F.t[n]) is None:
            return Classification("duplicial", F.N, Check.failed("t_n not invertible", n))
    for n in range(0, F.N + 1):
        if power(T, F.t[n], n + 1, X.levels[n]) != X.ident(n):
            return Classification("paracyclic", F.N, Check.failed("t_n^{n+1} != 1", n))
    return Classification("cyclic", F.N, Check.passed())


def extra_degeneracy_identities(F):
    """The identities that ``s_{-1} = t_{n+1} s_n`` is forced to satisfy."""
    X, T = F.base, F.target
    c = T.compose
    sm = F.extra_degeneracy
    for n in range(0, F.N):
        yield "d_0 s_-1 = 1", n, 0, c(X.d(n + 1, 0), sm(n)), X.ident(n)
        yield "d_{n+1} s_-1 = t_n", n, n + 1, c(X.d(n + 1, n + 1), sm(n)), F.t[n]
        for i in range(n):
            yield "d_{i+1} s_-1 = s_-1 d_i", n, i, c(X.d(n + 1, i + 1), sm(n)), c(sm(n - 1), X.d(n, i))
    for n in range(0, F.N - 1):
        for j in range(n + 1):
            yield "s_-1 s_j = s_{j+1} s_-1", n, j, c(sm(n + 1), X.s(n, j)), c(X.s(n + 1, j + 1), sm(n))
        yield "s_-1 s_-1 = s_0 s_-1", n, -1, c(sm(n + 1), sm(n)), c(X.s(n + 1, 0), sm(n))


# -- the correspondence with maps Dec_r X -> Dec_l X -----------------------


def _diagrams(m, X):
    """Counit triangle and comultiplication square for ``m: Dec_r X -> Dec_l X``."""
    T = X.target
    c = T.compose
    r = check_simplicial_map(m)
    if not r:
        return r
    for n in sorted(m.comps):
        if c(X.d(n + 1, 0), m[n]) != X.d(n + 1, n + 1):
            return Check.failed("counit triangle", n)
    for n in sorted(m.comps):
        if n + 2 > X.N:
            continue
        # Dec_r Dec_l X = Dec_l Dec_r X, so both whiskered components are m_{n+1}
        lhs = c(X.s(n + 1, 0), m[n])
        rhs = c(m[n + 1], c(m[n + 1], X.s(n + 1, n + 1)))
        if lhs != rhs:
            return Check.failed("comultiplication square", n)
    return Check.passed()


def family_to_decalage_map(F):
    """The simplicial map ``Dec_r X -> Dec_l X`` with component ``t_{n+1}`` at level ``n``.

    Returns ``(map, diagram_check)``.
    """
    X = F.base
    r = check_relations(F)
    if not r:
        raise NotDuplicial(f"family fails {r.failure}", r.witness)
    Dr, Dl = dec_object(X, "right"), dec_object(X, "left")
    m = SimplicialMap(Dr, Dl, {n: F.t[n + 1] for n in Dr.levels})
    return m, _diagrams(m, X)


def decalage_map_to_family(m, X):
    """Recover the family from a verified map ``Dec_r X -> Dec_l X``; ``t_0 = d_1 t_1 s_0``."""
    if X.N < 2:
        raise TruncationTooShallow("recovering t_0 needs truncation at least 2")
    if m.dom != dec_object(X, "right") or m.cod != dec_object(X, "left"):
        raise ShapeMismatch("map is not Dec_r X -> Dec_l X")
    r = _diagrams(m, X)
    if not r:
        raise DiagramsFail(f"decalage map fails {r.failure}", r.witness)
    T = X.target
    t = {n: m[n - 1] for n in range(1, X.N + 1)}
    t[0] = T.compose(X.d(1, 1), T.compose(t[1], X.s(0, 0)))
    if X.augmented and m[-1] != t[0]:
        raise InversionFails("level -1 component differs from d_1 t_1 s_0", (m[-1], t[0]))
    F = DuplicialFamily(X, t)
    r = check_relations(F)
    if not r:
        raise InversionFails(f"recovered family fails {r.failure}", r.witness)
    return F


def check_duplicial_map(F, G, m):
    """``m`` (level -> map) is a simplicial map commuting with every ``t_n``."""
    if F.N != G.N or F.base.augmented != G.base.augmented:
        raise ShapeMismatch("duplicial families of different truncation")
    sm = SimplicialMap(F.base, G.base, dict(m))
    r = check_simplicial_map(sm)
    if not r:
        return r
    T = F.target
    for n in range(0, F.N + 1):
        if T.compose(m[n], F.t[n]) != T.compose(G.t[n], m[n]):
            return Check.failed("commutes with t", n)
    return Check.passed()


def identity_family(X):
    return DuplicialFamily(X, {n: X.ident(n) for n in range(0, X.N + 1)})

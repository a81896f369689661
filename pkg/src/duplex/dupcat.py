"""Simplicial operators and the duplicial indexing category as a rewriting system.

A :class:`SimplicialOperator` ``(m, n, values)`` is an order-preserving map
``[m] -> [n]`` and acts contravariantly, ``X_n -> X_m``. Degree ``-1`` is the
empty ordinal (augmented case). A :class:`DuplicialOperator` ``(k, simp)`` is
the normal form ``t^k . simp``: apply ``simp`` and then ``t`` ``k`` times.
"""

import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement

from .errors import DegreeMismatch, DuplexError, OutOfTruncation


@dataclass(frozen=True, order=True)
class SimplicialOperator:
    m: int
    n: int
    values: tuple

    def __post_init__(self):
        if len(self.values) != self.m + 1 or self.m < -1 or self.n < -1:
            raise DegreeMismatch(f"operator {self.m}->{self.n} needs {self.m + 1} values")
        if any(not 0 <= v <= self.n for v in self.values) or \
                any(a > b for a, b in zip(self.values, self.values[1:])):
            raise DegreeMismatch(f"values {self.values} are not a monotone map into [{self.n}]")

    def is_identity(self):
        return self.m == self.n and self.values == tuple(range(self.n + 1))


def identity_op(n):
    return SimplicialOperator(n, n, tuple(range(n + 1)))


def face(n, i):
    """``d_i: X_n -> X_{n-1}``, the injection ``[n-1] -> [n]`` skipping ``i``."""
    if not 0 <= i <= n:
        raise DegreeMismatch(f"no face d_{i} out of degree {n}")
    return SimplicialOperator(n - 1, n, tuple(v for v in range(n + 1) if v != i))


def degeneracy(n, j):
    """``s_j: X_n -> X_{n+1}``, the surjection ``[n+1] -> [n]`` hitting ``j`` twice."""
    if not 0 <= j <= n:
        raise DegreeMismatch(f"no degeneracy s_{j} out of degree {n}")
    return SimplicialOperator(n + 1, n, tuple(range(j + 1)) + tuple(range(j, n + 1)))


def compose_op(phi, psi):
    """``phi`` after ``psi`` as actions; as maps of ordinals this is ``psi . phi``."""
    if phi.n != psi.m:
        raise DegreeMismatch(f"cannot apply a {phi.m}<-{phi.n} operator after {psi.m}<-{psi.n}")
    return SimplicialOperator(phi.m, psi.n, tuple(psi.values[v] for v in phi.values))


def ordinal_sum(phi, psi):
    shift = phi.n + 1
    return SimplicialOperator(phi.m + psi.m + 1, phi.n + psi.n + 1,
                              phi.values + tuple(v + shift for v in psi.values))


def rev_op(phi):
    """Conjugate by the order reversal of both ordinals."""
    m, n = phi.m + 1, phi.n + 1
    return SimplicialOperator(phi.m, phi.n, tuple(n - 1 - phi.values[m - 1 - i] for i in range(m)))


def all_operators(m, n):
    """Every monotone ``[m] -> [n]`` in lexicographic order of value lists."""
    if m == -1:
        return [SimplicialOperator(-1, n, ())]
    if n == -1:
        return []
    return [SimplicialOperator(m, n, v) for v in combinations_with_replacement(range(n + 1), m + 1)]


# generators are (kind, index, input degree)


@lru_cache(maxsize=None)
def factor(phi):
    """Generator word in application order: faces (largest index first), then degeneracies.

    The word is verified by recomposition.
    """
    image = sorted(set(phi.values))
    missing = [v for v in range(phi.n + 1) if v not in set(image)]
    word, level = [], phi.n
    for i in reversed(missing):
        word.append(("d", i, level))
        level -= 1
    repeats = [j for j in range(phi.m) if phi.values[j] == phi.values[j + 1]]
    for j in repeats:
        word.append(("s", j, level))
        level += 1
    if word_to_op(word, phi.n) != phi:
        raise DuplexError(f"factorization of {phi} failed to recompose")
    return tuple(word)


def gen_op(g):
    kind, i, n = g
    return face(n, i) if kind == "d" else degeneracy(n, i)


def word_to_op(word, n):
    op = identity_op(n)
    for g in word:
        op = compose_op(gen_op(g), op)
    return op


# -- duplicial operators ---------------------------------------------------


@dataclass(frozen=True, order=True)
class DuplicialOperator:
    k: int
    simp: SimplicialOperator

    def __post_init__(self):
        if self.k < 0:
            raise DegreeMismatch("t-power must be non-negative")
        if self.simp.m == -1 and self.k:
            raise DegreeMismatch("no t acts in degree -1")

    @property
    def m(self):
        return self.simp.m

    @property
    def n(self):
        return self.simp.n


def dup_identity(n):
    return DuplicialOperator(0, identity_op(n))


def t_op(n, k=1):
    return DuplicialOperator(k, identity_op(n))


def push_generator(g, k, stats=None):
    """Rewrite ``g . t^k`` as ``t^K . g'``; returns ``(K, g')``.

    Rules (``g`` taking degree ``n+1`` resp. ``n``):
    ``d_i t -> t d_{i-1}``, ``d_0 t -> d_{n+1}``, ``s_i t -> t s_{i-1}``, ``s_0 t -> t^2 s_n``.
    """
    kind, i, deg = g
    out = 0
    for _ in range(k):
        if stats is not None:
            stats["steps"] = stats.get("steps", 0) + 1
        if kind == "d":
            if i >= 1:
                i -= 1
                out += 1
            else:
                i = deg  # d_0 t_{n+1} = d_{n+1}: the t is consumed
        else:
            if i >= 1:
                i -= 1
                out += 1
            else:
                i = deg  # s_0 t_n = t_{n+1}^2 s_n
                out += 2
    return out, (kind, i, deg)


def push_operator(phi, k, stats=None):
    """Rewrite ``phi . t^k`` as ``t^K . psi``; returns ``(K, psi)``."""
    word = []
    for g in factor(phi):
        k, g2 = push_generator(g, k, stats)
        word.append(g2)
    return k, word_to_op(word, phi.n)


def compose_duplicial(a, b, stats=None):
    """Normal form of ``a`` after ``b``."""
    if a.n != b.m:
        raise DegreeMismatch(f"cannot apply an operator out of degree {a.n} after one into {b.m}")
    K, psi = push_operator(a.simp, b.k, stats)
    return DuplicialOperator(a.k + K, compose_op(psi, b.simp))


def random_operator(rng, n, m, kmax=3):
    """A random ``t^k . phi`` from degree ``n`` to ``m`` (``rng`` is a :class:`random.Random`)."""
    vals = tuple(sorted(rng.randint(0, n) for _ in range(m + 1)))
    return DuplicialOperator(rng.randint(0, kmax) if m >= 0 else 0, SimplicialOperator(m, n, vals))


# -- evaluation ------------------------------------------------------------


def _gen_map(F, g):
    kind, i, n = g
    X = F.base
    if kind == "d":
        return X.d(n, i)
    return X.s(n, i)


def eval_op(o, F):
    """The map ``X_n -> X_m`` of a duplicial (or simplicial) operator on a family."""
    if isinstance(o, SimplicialOperator):
        o = DuplicialOperator(0, o)
    X, T = F.base, F.target
    for deg in (o.m, o.n):
        if deg not in X.levels:
            raise OutOfTruncation(f"degree {deg} is outside the truncation of the family", deg)
    out = X.ident(o.n)
    for g in factor(o.simp):
        out = T.compose(_gen_map(F, g), out)
    for _ in range(o.k):
        out = T.compose(F.t[o.m], out)
    return out


# -- text notation ---------------------------------------------------------

_TOKEN = re.compile(r"t(?:\^\{?(\d+)\}?)?|([sd])_\{?(\d+)\}?|id|\.")
_HEADER = re.compile(r"^(.*)@\s*(-?\d+)\s*->\s*(-?\d+)\s*$")


def parse_operator(text):
    """Parse ``t^k . s_j ... d_i ... @ n->m``; the rightmost generator acts first.

    Generators and powers of ``t`` may be interleaved; the word is normalized.
    """
    mt = _HEADER.match(text.strip())
    if not mt:
        raise DegreeMismatch(f"missing '@ n->m' in {text!r}")
    body, n, m = mt.group(1), int(mt.group(2)), int(mt.group(3))
    tokens = []
    pos = 0
    body = body.strip()
    while pos < len(body):
        if body[pos].isspace():
            pos += 1
            continue
        tm = _TOKEN.match(body, pos)
        if not tm:
            raise DegreeMismatch(f"cannot parse operator near {body[pos:]!r}")
        pos = tm.end()
        tok = tm.group(0)
        if tok in (".", "id"):
            continue
        if tok.startswith("t"):
            tokens.append(("t", int(tm.group(1) or 1)))
        else:
            tokens.append((tm.group(2), int(tm.group(3))))
    op = dup_identity(n)
    deg = n
    for kind, i in reversed(tokens):
        if kind == "t":
            g = t_op(deg, i)
        else:
            simp = face(deg, i) if kind == "d" else degeneracy(deg, i)
            g = DuplicialOperator(0, simp)
        op = compose_duplicial(g, op)
        deg = op.m
    if deg != m:
        raise DegreeMismatch(f"word lands in degree {deg}, not {m}")
    return op


def format_operator(o):
    if isinstance(o, SimplicialOperator):
        o = DuplicialOperator(0, o)
    parts = []
    if o.k:
        parts.append(f"t^{o.k}")
    word = factor(o.simp)
    gens = " ".join(f"{kind}_{i}" for kind, i, _ in reversed(word))
    if gens:
        parts.append(gens)
    return f"{' . '.join(parts) if parts else 'id'} @ {o.n}->{o.m}"


# -- batched soundness sweep -----------------------------------------------


def _encode(vals, base):
    """Integer code of monotone value lists (rows of ``vals``); order-preserving."""
    import numpy as np
    code = np.zeros(vals.shape[0], dtype=np.int64)
    for c in range(vals.shape[1]):
        code = code * (base + 1) + vals[:, c]
    return code


def soundness_sweep(F, max_degree, inner_powers=(0, 1, 2), outer_powers=(0,)):
    """Check ``eval(a . b) = eval(a) . eval(b)`` for every composable pair in range.

    ``a = t^ka . phi_a`` and ``b = t^kb . phi_b`` run over all simplicial
    operators between degrees ``low..max_degree`` and the given t-powers. The
    normal forms come from :func:`push_operator`; the Delta part of the
    composite and the evaluation tables are batched with numpy. Set-valued
    families only. Returns a Check whose details carry the pair count.
    """
    import numpy as np

    from .report import Check

    X = F.base
    low = X.low
    top = min(max_degree, X.N)
    degs = range(low, top + 1)

    def arr(f):
        return np.asarray(f, dtype=np.int64)

    gens = {}
    for n in X.faces:
        for i, f in enumerate(X.faces[n]):
            gens["d", i, n] = arr(f)
    for n in X.degens:
        for j, s in enumerate(X.degens[n]):
            gens["s", j, n] = arr(s)
    tpow = {n: {0: np.arange(X.levels[n]), 1: arr(F.t[n])} for n in degs if n >= 0}

    def tmap(n, k):
        cache = tpow[n]
        if k not in cache:
            h = tmap(n, k // 2)
            cache[k] = h[h] if k % 2 == 0 else cache[1][h[h]]
        return cache[k]

    ops, table, codes = {}, {}, {}
    for m in degs:
        for n in degs:
            ops[m, n] = all_operators(m, n)
            if not ops[m, n]:
                continue
            rows = []
            for phi in ops[m, n]:
                out = np.arange(X.levels[n])
                for g in factor(phi):
                    out = gens[g][out]
                rows.append(out)
            table[m, n] = np.stack(rows)
            vals = np.array([phi.values for phi in ops[m, n]], dtype=np.int64).reshape(len(ops[m, n]), m + 1)
            codes[m, n] = _encode(vals, n)

    def tp(n, k, x):
        return x if k == 0 else tmap(n, k)[x]

    bvals = {}
    for (m, n), lst in ops.items():
        if lst:
            bvals[m, n] = np.array([phi.values for phi in lst], dtype=np.int64).reshape(len(lst), m + 1)
    inner = {}
    pairs = 0
    for p in degs:
        for n in degs:
            if ops[p, n]:
                for kb in (inner_powers if p >= 0 else (0,)):
                    inner[p, n, kb] = tp(p, kb, table[p, n])
        for m in degs:
            if not ops[m, p]:
                continue
            for ia, phi_a in enumerate(ops[m, p]):
                Ea = table[m, p][ia]
                for kb in (inner_powers if p >= 0 else (0,)):
                    K, psi = push_operator(phi_a, kb)
                    cols = list(psi.values)
                    for n in degs:
                        if not ops[p, n] or not ops[m, n]:
                            continue
                        Bvals = bvals[p, n]
                        comp_vals = Bvals[:, cols]
                        idx = np.searchsorted(codes[m, n], _encode(comp_vals, n))
                        rhs_simp = table[m, n][idx]
                        lhs_b = Ea[inner[p, n, kb]]
                        for ka in (outer_powers if m >= 0 else (0,)):
                            lhs = tp(m, ka, lhs_b)
                            rhs = tp(m, ka + K, rhs_simp)
                            pairs += len(Bvals)
                            bad = np.nonzero((lhs != rhs).any(axis=1))[0]
                            if bad.size:
                                b = ops[p, n][int(bad[0])]
                                return Check.failed("eval functoriality", (ka, phi_a), (kb, b), pairs=pairs)
    return Check.passed(pairs=pairs)

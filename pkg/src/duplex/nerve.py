"""Nerves of finite categories and their duplicial structures."""

from dataclasses import dataclass
from itertools import product

from sympy.combinatorics.fp_groups import FpGroup
from sympy.combinatorics.free_groups import free_group

from .abelian import PresentedAbGroup
from .budget import as_budget
from .duplicial import classify_duplicial
from .errors import (
    AdjunctionInvalid,
    ConditionsFail,
    GroupoidTooLarge,
    InversionFails,
    NoHom,
    NotGroupoid,
    ShapeMismatch,
    TheoremViolation,
)
from .fincat import (
    Adjunction,
    FinCategory,
    FinFunctor,
    NatTrans,
    check_adjunction,
    check_functor,
    enumerate_functors,
    enumerate_nat_trans,
    identity_functor,
    triangle_identities,
)
from .report import Check
from .simplicial import SetTarget, TruncAugSimplicial, dec_object


def chains(C, n):
    """Composable strings ``(f1, ..., fn)`` with ``tgt(f_k) == src(f_{k+1})``; level 0 is ``(x,)``."""
    if n == 0:
        return [(x,) for x in C.objects]
    out = [(f,) for f in C.morphisms]
    for _ in range(n - 1):
        out = [c + (g,) for c in out for g in C.morphisms if C.src[g] == C.tgt[c[-1]]]
    return out


def chain_vertex(C, c, n, i):
    """Vertex ``x_i`` of an n-chain."""
    if n == 0:
        return c[0]
    return C.src[c[i]] if i < n else C.tgt[c[n - 1]]


def chain_face(C, c, n, i):
    if n == 1:
        return (C.tgt[c[0]],) if i == 0 else (C.src[c[0]],)
    if i == 0:
        return c[1:]
    if i == n:
        return c[:-1]
    return c[: i - 1] + (C.comp[c[i], c[i - 1]],) + c[i + 1:]


def chain_degen(C, c, n, j):
    x = chain_vertex(C, c, n, j)
    if n == 0:
        return (C.ident[x],)
    return c[:j] + (C.ident[x],) + c[j:]


def nerve(C, N):
    """The nerve truncated at ``N`` as a set-valued simplicial object.

    ``meta["elements"][n]`` lists the n-chains; maps are index tuples.
    """
    elems = {n: chains(C, n) for n in range(N + 1)}
    index = {n: {c: k for k, c in enumerate(elems[n])} for n in elems}
    faces = {n: tuple(tuple(index[n - 1][chain_face(C, c, n, i)] for c in elems[n])
                      for i in range(n + 1)) for n in range(1, N + 1)}
    degens = {n: tuple(tuple(index[n + 1][chain_degen(C, c, n, j)] for c in elems[n])
                       for j in range(n + 1)) for n in range(N)}
    return TruncAugSimplicial(SetTarget(), N, {n: len(elems[n]) for n in elems}, faces, degens,
                              False, {"kind": "nerve", "elements": elems, "index": index, "cat": C})


def chain_t(C, tobj, tmor, c, n):
    """``t_n(f1..fn) = (t(fn...f1), f1, ..., f_{n-1})`` and ``t_0(x) = tx``."""
    if n == 0:
        return (tobj[c[0]],)
    return (tmor[C.compose(*reversed(c))],) + c[:-1]


def nerve_family(C, tobj, tmor, N, X=None):
    """The candidate family on the nerve induced by object and morphism data ``t``."""
    from .duplicial import DuplicialFamily
    X = X or nerve(C, N)
    elems, index = X.meta["elements"], X.meta["index"]
    t = {}
    for n in range(N + 1):
        vals = []
        for c in elems[n]:
            img = chain_t(C, tobj, tmor, c, n)
            if img not in index[n]:
                return None  # not even a map of n-chains
            vals.append(index[n][img])
        t[n] = tuple(vals)
    return DuplicialFamily(X, t)


def canonical_groupoid_data(C):
    """``t x = x`` and ``t f = f^{-1}``: the structure induced by ``p^{-1} -| p``."""
    inv = [C.inverse(f) for f in C.morphisms]
    if any(g is None for g in inv):
        raise NotGroupoid("category has a non-invertible morphism", inv.index(None))
    return tuple(C.objects), tuple(inv)


# -- slices and the right decalage -------------------------------------------


def slice_category(C, x):
    """``C/x``: objects are arrows into ``x``; an arrow ``f -> g`` is a pair ``(s, g)`` with ``g s = f``."""
    objs = [f for f in C.morphisms if C.tgt[f] == x]
    pos = {f: k for k, f in enumerate(objs)}
    arrows = [(s, g) for g in objs for s in C.morphisms if C.tgt[s] == C.src[g]]
    aid = {a: k for k, a in enumerate(arrows)}
    morphisms = [(f"{C.mor_names[s]}/{C.mor_names[g]}", pos[C.comp[g, s]], pos[g]) for s, g in arrows]
    comp = {}
    for (s2, g2) in arrows:
        for (s1, g1) in arrows:
            if g1 == C.comp[g2, s2]:
                comp[aid[s2, g2], aid[s1, g1]] = aid[C.comp[s2, s1], g2]
    ident = [aid[C.ident[C.src[f]], f] for f in objs]
    S = FinCategory([C.mor_names[f] for f in objs], morphisms, ident, comp, name=f"{C.name}/{x}")
    return S, objs, aid


def check_nerve_decalage(C, N):
    """Right decalage of the nerve against the nerve of ``sum_x C/x``, through the explicit bijection."""
    X = nerve(C, N)
    D = dec_object(X, "right")
    slices = {x: slice_category(C, x) for x in C.objects}
    nerves = {x: nerve(S, N - 1) for x, (S, _, _) in slices.items()}
    offset, total = {}, {}
    for n in range(N):
        k = 0
        for x in C.objects:
            offset[n, x] = k
            k += nerves[x].levels[n]
        total[n] = k

    def image(n, c):
        # an (n+1)-chain of C becomes an n-chain over its last target
        x = C.tgt[c[-1]]
        S, objs, aid = slices[x]
        if n == 0:
            sc = (objs.index(c[0]),)
        else:
            tails = [C.compose(*reversed(c[k + 1:])) for k in range(n)]
            sc = tuple(aid[c[k], tails[k]] for k in range(n))
        return offset[n, x] + nerves[x].meta["index"][n][sc]

    elems = X.meta["elements"]
    maps = {n: tuple(image(n, c) for c in elems[n + 1]) for n in range(N)}
    for n in range(N):
        if sorted(maps[n]) != list(range(total[n])):
            return Check.failed("not a bijection", n)

    for n in range(1, N):
        for i in range(n + 1):
            ours = [maps[n - 1][D.d(n, i)[k]] for k in range(D.levels[n])]
            theirs = [None] * total[n]
            for x in C.objects:
                for k, v in enumerate(nerves[x].d(n, i)):
                    theirs[offset[n, x] + k] = offset[n - 1, x] + v
            if ours != [theirs[maps[n][k]] for k in range(D.levels[n])]:
                return Check.failed("face", n, i)
    for n in range(N - 1):
        for j in range(n + 1):
            ours = [maps[n + 1][D.s(n, j)[k]] for k in range(D.levels[n])]
            theirs = [None] * total[n]
            for x in C.objects:
                for k, v in enumerate(nerves[x].s(n, j)):
                    theirs[offset[n, x] + k] = offset[n + 1, x] + v
            if ours != [theirs[maps[n][k]] for k in range(D.levels[n])]:
                return Check.failed("degeneracy", n, j)
    return Check.passed(truncation=N, sizes=tuple(total[n] for n in range(N)))


# -- duplicial data on a category --------------------------------------------


@dataclass(frozen=True)
class NerveDuplicialData:
    """``t x`` per object and ``t f: t x -> a`` per morphism ``f: a -> x``."""

    t_obj: tuple
    t_mor: tuple

    def epsilon(self, C, x):
        return self.t_mor[C.ident[x]]


def nerve_conditions(C, D):
    t, to = D.t_mor, D.t_obj
    if len(to) != C.n_obj or len(t) != C.n_mor:
        return Check.failed("shape")
    for f in C.morphisms:
        tf = t[f]
        if not (0 <= tf < C.n_mor) or C.src[tf] != to[C.tgt[f]] or C.tgt[tf] != C.src[f]:
            return Check.failed("shape", f)
    for x in C.objects:
        if t[t[C.ident[x]]] != C.ident[to[x]]:
            return Check.failed("identity condition", x)
    for (f, g), fg in sorted(C.comp.items()):
        if C.comp[g, t[fg]] != t[f]:
            return Check.failed("functoriality condition", f, g)
    return Check.passed()


def check_nerve_data(C, D, N=4):
    """The two conditions, cross-validated against the induced family on the nerve.

    Returns ``(check, family)``; ``family`` is None when ``t`` is not even a map of chains.
    """
    r = nerve_conditions(C, D)
    F = nerve_family(C, D.t_obj, D.t_mor, N) if _shape_ok(C, D) else None
    kind = classify_duplicial(F) if F is not None else None
    valid = kind is not None and kind.valid
    if bool(r) != valid:
        raise TheoremViolation("conditions and induced family disagree", (D, r.failure, str(kind)))
    if not r:
        return r, F
    return Check.passed(kind=kind.kind, truncation=N), F


def _shape_ok(C, D):
    return len(D.t_obj) == C.n_obj and len(D.t_mor) == C.n_mor and \
        all(0 <= D.t_mor[f] < C.n_mor for f in C.morphisms)


def enumerate_nerve_data(C, budget=None, require=True):
    """All data satisfying the conditions, by backtracking (identities first).

    With ``require=False`` every shape-correct candidate is produced instead.
    """
    budget = as_budget(budget)
    order = sorted(C.morphisms, key=lambda f: (not C.is_identity(f), f))
    pos = {f: k for k, f in enumerate(order)}
    checks = [[] for _ in order]
    if require:
        for (f, g), fg in C.comp.items():
            checks[max(pos[f], pos[g], pos[fg])].append((f, g, fg))
    out = []
    for to in product(C.objects, repeat=C.n_obj):
        t = [None] * C.n_mor

        def rec(k):
            if k == len(order):
                D = NerveDuplicialData(tuple(to), tuple(t))
                if not require or all(t[t[C.ident[x]]] == C.ident[to[x]] for x in C.objects):
                    out.append(D)
                return
            f = order[k]
            for cand in C.hom(to[C.tgt[f]], C.src[f]):
                budget.spend()
                t[f] = cand
                if all(C.comp[g, t[fg]] == t[ff] for ff, g, fg in checks[k]):
                    rec(k + 1)
            t[f] = None

        rec(0)
    return out


def canonical_groupoid(G):
    to, tm = canonical_groupoid_data(G)
    return NerveDuplicialData(to, tm)


# -- the fundamental groupoid -------------------------------------------------


def _components(C):
    comp = {}
    for x in C.objects:
        if x in comp:
            continue
        comp[x] = x
        todo = [x]
        while todo:
            a = todo.pop()
            for f in C.morphisms:
                for u, v in ((C.src[f], C.tgt[f]), (C.tgt[f], C.src[f])):
                    if u == a and v not in comp:
                        comp[v] = x
                        todo.append(v)
    groups = {}
    for x in C.objects:
        groups.setdefault(comp[x], []).append(x)
    return [tuple(v) for _, v in sorted(groups.items())]


def _invert(word):
    return [(f, -e) for f, e in reversed(word)]


@dataclass(eq=False)
class Pi1:
    """``p: C -> Pi_1(C)`` with, per component, the vertex-group presentation used.

    Every morphism of the groupoid is recorded as a zigzag of ``C``-morphisms
    (diagrammatic order, exponent -1 for a formal inverse) so that functors out
    of it can be induced from functors inverting the image of ``p``.
    """

    source: FinCategory
    groupoid: FinCategory
    p: FinFunctor
    presentations: tuple
    zigzags: tuple

    def induce(self, F, inverse):
        """The unique ``q`` with ``q p = F``, given ``inverse(f)`` for ``F f``."""
        P, D = self.groupoid, F.cod
        mor = []
        for m in P.morphisms:
            out = D.ident[F.obj[P.src[m]]]
            for f, e in self.zigzags[m]:
                out = D.comp[F.mor[f] if e > 0 else inverse(f), out]
            mor.append(out)
        q = FinFunctor(P, D, list(F.obj), mor)
        if not check_functor(q) or self.p.then(q) != F:
            raise TheoremViolation("induced functor out of Pi_1 is not well defined", F)
        return q


def pi1(C, cap=10**5, max_table=10**7):
    """The localization of ``C`` at all morphisms, built one connected component at a time.

    Each component is the codiscrete groupoid on its objects times the vertex
    group at its first object; that group is presented by one generator per
    non-identity morphism, killing a spanning tree, with one relator per
    composite, and enumerated by Todd-Coxeter.  Raises GroupoidTooLarge when the
    groupoid would have more than ``cap`` morphisms (for instance when it is infinite).
    """
    comps = _components(C)
    objects, morphisms, ident, comp_table = list(C.obj_names), [], [None] * C.n_obj, {}
    zigzags, presentations, pmor = [], [], [None] * C.n_mor
    n_mor = n_comp = 0
    for objs in comps:
        base, inside = objs[0], set(objs)
        tau, tree = {base: []}, set()
        todo = [base]
        while todo:
            a = todo.pop(0)
            for f in C.morphisms:
                if C.is_identity(f):
                    continue
                if C.src[f] == a and C.tgt[f] not in tau:
                    tau[C.tgt[f]] = tau[a] + [(f, 1)]
                    tree.add(f)
                    todo.append(C.tgt[f])
                elif C.tgt[f] == a and C.src[f] not in tau:
                    tau[C.src[f]] = tau[a] + [(f, -1)]
                    tree.add(f)
                    todo.append(C.src[f])
        gens = [f for f in C.morphisms if C.src[f] in inside and not C.is_identity(f)]
        order, table, words, col, colof = _vertex_group(C, gens, tree, cap)
        n_mor += len(objs) ** 2 * order
        n_comp += len(objs) ** 3 * order ** 2
        if n_mor > cap or n_comp > max_table:
            raise GroupoidTooLarge(f"Pi_1 has more than {cap} morphisms", n_mor)
        presentations.append((C.obj_names[base], tuple(C.mor_names[f] for f in gens if f not in tree),
                              order))
        mult = _multiplication(table, words, colof)
        ids = {}
        for a in objs:
            for b in objs:
                for e in range(order):
                    ids[a, b, e] = len(morphisms)
                    morphisms.append((f"[{C.obj_names[a]}->{C.obj_names[b]}:{e}]", a, b))
                    word = []
                    for j, sign in words[e]:
                        f = gens[j]
                        step = _invert(tau[C.src[f]]) + [(f, 1)] + tau[C.tgt[f]]
                        word += step if sign > 0 else _invert(step)
                    zigzags.append(tuple(_reduce(_invert(tau[a]) + word + tau[b])))
        for a in objs:
            ident[a] = ids[a, a, 0]
        for (a, b, g), m1 in ids.items():
            for c in objs:
                for h in range(order):
                    comp_table[ids[b, c, h], m1] = ids[a, c, mult[g][h]]
        for f in gens:
            pmor[f] = ids[C.src[f], C.tgt[f], table[0][col[f]]]
        for x in objs:
            pmor[C.ident[x]] = ids[x, x, 0]
    P = FinCategory(objects, morphisms, ident, comp_table, name=f"Pi1({C.name})" if C.name else None)
    p = FinFunctor(C, P, list(C.objects), pmor)
    return Pi1(C, P, p, tuple(presentations), tuple(zigzags))


def _reduce(word):
    out = []
    for letter in word:
        if out and out[-1][0] == letter[0] and out[-1][1] == -letter[1]:
            out.pop()
        else:
            out.append(letter)
    return out


def _vertex_group(C, gens, tree, cap):
    """Coset table of the vertex group on the trivial subgroup, with a word per coset."""
    if not gens:
        return 1, [[]], [[]], {}, {}
    F, *xs = free_group(",".join(f"x{k}" for k in range(len(gens))))
    letter = {f: xs[k] for k, f in enumerate(gens)}

    def w(f):
        return F.identity if C.is_identity(f) else letter[f]

    rels = [letter[f] for f in gens if f in tree]
    inside = set(gens)
    for (g, f), gf in sorted(C.comp.items()):
        if f in inside or g in inside or gf in inside:
            # diagrammatic: f then g
            r = w(f) * w(g) * w(gf) ** -1
            if r != F.identity:
                rels.append(r)
    # an infinite abelianization means an infinite group: skip the enumeration
    sums = [[sum(e for g, e in r.array_form if g == x.array_form[0][0]) for x in xs] for r in rels]
    if PresentedAbGroup(len(xs), sums).free_rank:
        raise GroupoidTooLarge("vertex group has infinite abelianization", cap)
    try:
        T = FpGroup(F, rels).coset_enumeration([], max_cosets=4 * cap + 64)
    except ValueError as exc:
        raise GroupoidTooLarge(f"vertex group enumeration exceeded the cap {cap}", cap) from exc
    T.compress()
    T.standardize()
    table = [list(row) for row in T.table]
    col = {}
    for k, f in enumerate(gens):
        col[f] = T.A.index(xs[k])
    sign = {}
    for k in range(len(gens)):
        sign[T.A.index(xs[k])] = (k, 1)
        sign[T.A.index(xs[k] ** -1)] = (k, -1)
    words = [None] * len(table)
    words[0] = []
    todo = [0]
    while todo:
        c = todo.pop(0)
        for j, d in enumerate(table[c]):
            if words[d] is None:
                words[d] = words[c] + [sign[j]]
                todo.append(d)
    return len(table), table, words, col, {v: j for j, v in sign.items()}


def _multiplication(table, words, colof):
    """``mult[g][h]`` is ``g`` followed by ``h``: act on coset ``g`` by the word of ``h``."""
    mult = []
    for g in range(len(table)):
        row = []
        for h in range(len(table)):
            c = g
            for letter in words[h]:
                c = table[c][colof[letter]]
            row.append(c)
        mult.append(row)
    return mult


# -- duplicial structure versus a left adjoint of p ----------------------------


def adjoint_to_duplicial(C, adj):
    """``t x = i p x`` and ``t f = eps_x . i((p f)^{-1})`` for ``f: x -> y``."""
    i, p, eps = adj.left, adj.right, adj.counit
    r = check_adjunction(adj)
    if not r:
        raise AdjunctionInvalid(f"not an adjunction: {r.failure}", r.witness)
    P = p.cod
    to, tm = [], []
    for y in C.objects:
        to.append(i.obj[p.obj[y]])
    for f in C.morphisms:
        inv = P.inverse(p.mor[f])
        if inv is None:
            raise AdjunctionInvalid("p f is not invertible", f)
        tm.append(C.comp[eps[C.src[f]], i.mor[inv]])
    D = NerveDuplicialData(tuple(to), tuple(tm))
    r = nerve_conditions(C, D)
    if not r:
        raise TheoremViolation(f"adjoint produced data failing the {r.failure}", r.witness)
    return D


def duplicial_to_adjoint(C, D, cap=10**5, P=None):
    """The left adjoint ``i`` with ``i p = G`` where ``G f = t^2 f``, and counit ``eps_x = t 1_x``."""
    r = nerve_conditions(C, D)
    if not r:
        raise ConditionsFail(f"data fails the {r.failure}", r.witness)
    t = D.t_mor
    eps = [t[C.ident[x]] for x in C.objects]
    G = FinFunctor(C, C, list(D.t_obj), [t[t[f]] for f in C.morphisms])
    if not check_functor(G):
        raise TheoremViolation("t^2 is not a functor", check_functor(G).witness)
    for f in C.morphisms:
        x, y = C.src[f], C.tgt[f]
        if C.comp[eps[y], G.mor[f]] != C.comp[f, eps[x]]:
            raise TheoremViolation("eps is not natural", f)
    for x in C.objects:
        if G.mor[eps[x]] != eps[D.t_obj[x]]:
            raise TheoremViolation("G is not well copointed", x)

    def inverse(f):
        g = t[C.comp[f, eps[C.src[f]]]]
        if C.comp[g, G.mor[f]] != C.ident[G.obj[C.src[f]]] or \
                C.comp[G.mor[f], g] != C.ident[G.obj[C.tgt[f]]]:
            raise InversionFails("t(f . eps_x) does not invert t^2 f", f)
        return g

    for f in C.morphisms:
        inverse(f)
    P = P or pi1(C, cap)
    i = P.induce(G, inverse)
    Pg = P.groupoid
    eta = NatTrans(identity_functor(Pg), i.then(P.p), [Pg.inverse(P.p.mor[e]) for e in eps])
    adj = Adjunction(i, P.p, eta, NatTrans(P.p.then(i), identity_functor(C), eps))
    r = check_adjunction(adj)
    if not r:
        raise TheoremViolation(f"constructed adjunction fails: {r.failure}", r.witness)
    return adj


def enumerate_left_adjoints(P, budget=None):
    """Every adjunction ``(i, eta, eps)`` with ``i -| p``, found without reference to duplicial data."""
    budget = as_budget(budget)
    C, Pg, p = P.source, P.groupoid, P.p
    out = []
    for i in enumerate_functors(Pg, C, budget):
        for eps in enumerate_nat_trans(p.then(i), identity_functor(C), budget):
            for eta in enumerate_nat_trans(identity_functor(Pg), i.then(p), budget):
                a = Adjunction(i, p, eta, eps)
                if triangle_identities(i, p, eta.comp, eps.comp):
                    out.append(a)
    return out


def coreflection_duplicial(i, r, unit, counit, cap=10**5):
    """Duplicial data from a groupoid ``G`` with ``i: G -> C`` left adjoint to ``r``.

    The induced ``q: Pi_1(C) -> G`` with ``q p = r`` is an equivalence, so ``i q``
    is left adjoint to ``p``; its unit is read off through ``q``'s full faithfulness.
    """
    G, C = i.dom, i.cod
    if not G.is_groupoid():
        raise NotGroupoid("the coreflecting category is not a groupoid", G)
    base = Adjunction(i, r, unit, counit)
    try:
        ok = check_adjunction(base)
    except ShapeMismatch as exc:
        raise AdjunctionInvalid(str(exc)) from exc
    if not ok:
        raise AdjunctionInvalid(f"i -| r fails: {ok.failure}", ok.witness)
    P = pi1(C, cap)
    Pg = P.groupoid
    q = P.induce(r, lambda f: G.inverse(r.mor[f]))
    L = q.then(i)
    eta = []
    for a in Pg.objects:
        hits = [m for m in Pg.hom(a, P.p.obj[L.obj[a]]) if q.mor[m] == unit[q.obj[a]]]
        if len(hits) != 1:
            raise TheoremViolation("q is not fully faithful", a)
        eta.append(hits[0])
    adj = Adjunction(L, P.p, NatTrans(identity_functor(Pg), L.then(P.p), eta),
                     NatTrans(P.p.then(L), identity_functor(C), counit.comp))
    ok = check_adjunction(adj)
    if not ok:
        raise TheoremViolation(f"i q is not left adjoint to p: {ok.failure}", ok.witness)
    return adjoint_to_duplicial(C, adj)


def natural_automorphisms(C, budget=None):
    """Natural isomorphisms ``1_C => 1_C``."""
    one = identity_functor(C)
    return [a for a in enumerate_nat_trans(one, one, budget) if all(C.is_iso(c) for c in a.comp)]


@dataclass(frozen=True)
class StructureReport:
    admits_duplicial: bool
    structures: int
    paracyclic: int
    cyclic: int
    groupoid: bool
    natural_automorphisms: int
    truncation: int

    def as_dict(self):
        return dict(self.__dict__)


def classify_category_structures(C, N=4, budget=None):
    """Exhaustive census of duplicial structures on ``C``, classified at truncation ``N``.

    Raises TheoremViolation if a non-groupoid carries paracyclic structure, or a
    groupoid's cyclic count differs from its count of natural automorphisms of 1.
    """
    data = enumerate_nerve_data(C, budget)
    X = nerve(C, N)
    kinds = [classify_duplicial(nerve_family(C, D.t_obj, D.t_mor, N, X)).kind for D in data]
    para = sum(k in ("paracyclic", "cyclic") for k in kinds)
    cyc = kinds.count("cyclic")
    grp = C.is_groupoid()
    nat = len(natural_automorphisms(C, budget))
    if para and not grp:
        raise TheoremViolation("paracyclic structure on a non-groupoid", C)
    if grp and cyc != nat:
        raise TheoremViolation("cyclic structures do not match natural automorphisms", (cyc, nat))
    if "invalid" in kinds:
        raise TheoremViolation("data satisfying the conditions induced an invalid family", C)
    return StructureReport(bool(data), len(data), para, cyc, grp, nat, N)


# -- monoidal categories ---------------------------------------------------------


def internal_hom(M, x, d):
    """``([x,d], eps_x: x (x) [x,d] -> d)``: smallest representing object, with ``[i,d] = d``."""
    A = M.base
    if x == M.unit:
        return d, A.ident[d]
    for h in A.objects:
        xh = M.tensor(x, h)
        for e in A.hom(xh, d):
            if _universal(M, x, d, h, e):
                return h, e
    raise NoHom(f"no internal hom [{A.obj_names[x]}, {A.obj_names[d]}]", (x, d))


def _transpose(M, x, h, e, v):
    return M.base.comp[e, M.tensor_mor(M.base.ident[x], v)]


def _universal(M, x, d, h, e):
    A = M.base
    for y in A.objects:
        imgs = [_transpose(M, x, h, e, v) for v in A.hom(y, h)]
        if sorted(imgs) != sorted(A.hom(M.tensor(x, y), d)):
            return False
    return True


def _untranspose(M, x, h, e, y, u):
    """The unique ``v: y -> h`` with ``e . (x (x) v) = u``."""
    A = M.base
    for v in A.hom(y, h):
        if _transpose(M, x, h, e, v) == u:
            return v
    raise TheoremViolation("transpose does not exist", (x, u))


@dataclass(frozen=True)
class MonoidalReport:
    duplicial: bool
    star_autonomous: bool
    paracyclic: bool
    homs: tuple
    failure: str = ""

    def implications(self):
        return {"star_autonomous=>duplicial": not self.star_autonomous or self.duplicial,
                "paracyclic=>star_autonomous": not self.paracyclic or self.star_autonomous}

    def as_dict(self):
        out = {k: v for k, v in self.__dict__.items() if k != "homs"}
        out["implications"] = self.implications()
        return out


def dual_functor(M, d):
    """``[-, d]`` as a table: objects and the action on morphisms (contravariant)."""
    A = M.base
    homs = [internal_hom(M, x, d) for x in A.objects]
    mor = []
    for u in A.morphisms:
        x, x2 = A.src[u], A.tgt[u]
        h2, e2 = homs[x2]
        h, e = homs[x]
        # [u,d]: [x2,d] -> [x,d] transposes e2 . (u (x) [x2,d])
        mor.append(_untranspose(M, x, h, e, h2, A.comp[e2, M.tensor_mor(u, A.ident[h2])]))
    return homs, mor


def check_monoidal_duplicial(M, d):
    A = M.base
    try:
        homs, mor = dual_functor(M, d)
    except NoHom as exc:
        return MonoidalReport(False, False, False, (), f"missing hom {exc.witness}")
    hd, ed = homs[d]
    unit_map = _untranspose(M, d, hd, ed, M.unit, A.ident[d])
    duplicial = homs[M.unit][0] == d and A.is_iso(unit_map)
    # [-,d]: A -> A^op is fully faithful when each hom-set map is a bijection
    ff = all(sorted(mor[u] for u in A.hom(x, y)) == sorted(A.hom(homs[y][0], homs[x][0]))
             for x in A.objects for y in A.objects)
    images = {h for h, _ in homs}
    ess = all(any(A.hom(z, h) and any(A.is_iso(m) for m in A.hom(z, h)) for h in images)
              for z in A.objects)
    star = ff and ess
    para = ff and len(images) == A.n_obj
    failure = "" if duplicial else "unit map i -> [d,d] is not invertible"
    return MonoidalReport(duplicial, star, para, tuple(h for h, _ in homs), failure)


# -- strict 2-categories -----------------------------------------------------------


@dataclass(eq=False)
class Strict2Cat:
    """A finite strict 2-category.

    1-cells and 2-cells carry global ids; ``hcomp1[g, f]`` is ``g . f`` (``f``
    first) and ``hcomp2[b, a]`` is the horizontal composite of 2-cells.
    """

    n_obj: int
    cells1: tuple      # (src object, tgt object)
    cells2: tuple      # (src 1-cell, tgt 1-cell)
    id1: tuple
    id2: tuple
    vcomp: dict
    hcomp1: dict
    hcomp2: dict
    name: str = None

    def hom2(self, f, g):
        return [a for a, (s, t) in enumerate(self.cells2) if s == f and t == g]

    def hom1(self, a, b):
        return [f for f, (s, t) in enumerate(self.cells1) if s == a and t == b]

    def whisker(self, f, beta):
        """``f . beta`` for a 1-cell ``f`` after the 2-cell ``beta``."""
        return self.hcomp2[self.id2[f], beta]


def check_2cat(B):
    n1, n2 = len(B.cells1), len(B.cells2)
    for a in range(n2):
        f, g = B.cells2[a]
        if B.vcomp.get((a, B.id2[f])) != a or B.vcomp.get((B.id2[g], a)) != a:
            return Check.failed("vertical identity", a)
    for b, a in product(range(n2), repeat=2):
        if B.cells2[a][1] == B.cells2[b][0]:
            for c in range(n2):
                if B.cells2[b][1] == B.cells2[c][0]:
                    if B.vcomp[c, B.vcomp[b, a]] != B.vcomp[B.vcomp[c, b], a]:
                        return Check.failed("vertical associativity", c, b, a)
    for g, f in product(range(n1), repeat=2):
        if B.cells1[f][1] != B.cells1[g][0]:
            continue
        gf = B.hcomp1.get((g, f))
        if gf is None or B.cells1[gf] != (B.cells1[f][0], B.cells1[g][1]):
            return Check.failed("horizontal composite of 1-cells", g, f)
        if B.hcomp2.get((B.id2[g], B.id2[f])) != B.id2[gf]:
            return Check.failed("horizontal identities", g, f)
    for f in range(n1):
        s, t = B.cells1[f]
        if B.hcomp1[f, B.id1[s]] != f or B.hcomp1[B.id1[t], f] != f:
            return Check.failed("1-cell unit", f)
    for h, g, f in product(range(n1), repeat=3):
        if B.cells1[f][1] == B.cells1[g][0] and B.cells1[g][1] == B.cells1[h][0]:
            if B.hcomp1[h, B.hcomp1[g, f]] != B.hcomp1[B.hcomp1[h, g], f]:
                return Check.failed("1-cell associativity", h, g, f)
    pairs = [(b, a) for b, a in product(range(n2), repeat=2)
             if B.cells1[B.cells2[a][0]][1] == B.cells1[B.cells2[b][0]][0]]
    for b, a in pairs:
        ba = B.hcomp2.get((b, a))
        want = (B.hcomp1[B.cells2[b][0], B.cells2[a][0]], B.hcomp1[B.cells2[b][1], B.cells2[a][1]])
        if ba is None or B.cells2[ba] != want:
            return Check.failed("horizontal composite of 2-cells", b, a)
    for (b, a), (b2, a2) in product(pairs, repeat=2):
        if B.cells2[a][1] == B.cells2[a2][0] and B.cells2[b][1] == B.cells2[b2][0]:
            lhs = B.hcomp2[B.vcomp[b2, b], B.vcomp[a2, a]]
            if lhs != B.vcomp[B.hcomp2[b2, a2], B.hcomp2[b, a]]:
                return Check.failed("interchange", b2, a2, b, a)
    return Check.passed()


def locally_discrete(C):
    """``C`` with identity 2-cells only."""
    cells1 = tuple((C.src[f], C.tgt[f]) for f in C.morphisms)
    cells2 = tuple((f, f) for f in C.morphisms)
    ids = tuple(C.morphisms)
    return Strict2Cat(C.n_obj, cells1, cells2, tuple(C.ident), ids,
                      {(f, f): f for f in C.morphisms}, dict(C.comp), dict(C.comp), name=C.name)


def monoidal_2cat(M):
    """One object; 1-cells are objects of ``M`` and ``g . f = g (x) f``."""
    A = M.base
    cells1 = tuple((0, 0) for _ in A.objects)
    cells2 = tuple((A.src[u], A.tgt[u]) for u in A.morphisms)
    h1 = {(g, f): M.tensor(g, f) for g in A.objects for f in A.objects}
    h2 = {(b, a): M.tensor_mor(b, a) for b in A.morphisms for a in A.morphisms}
    return Strict2Cat(1, cells1, cells2, (M.unit,), tuple(A.ident), dict(A.comp), h1, h2, name=M.name)


@dataclass(frozen=True)
class TwoCatData:
    t_obj: tuple
    eps_obj: tuple
    t_mor: tuple
    eps_mor: tuple


def monoidal_data(M, d):
    A = M.base
    homs = [internal_hom(M, x, d) for x in A.objects]
    return TwoCatData((0,), (d,), tuple(h for h, _ in homs), tuple(e for _, e in homs))


def nerve_2cat_data(C, D):
    """Data on ``locally_discrete(C)``; ``eps_f`` is an identity, so ``f . tf`` must equal ``t 1_x``."""
    eps = tuple(D.t_mor[C.ident[x]] for x in C.objects)
    em = tuple(C.comp[f, D.t_mor[f]] if C.comp.get((f, D.t_mor[f])) == eps[C.tgt[f]] else None
               for f in C.morphisms)
    return TwoCatData(D.t_obj, eps, D.t_mor, em)


def check_2cat_duplicial(B, data):
    """Conditions (c), (d), (e) as equalities and the right-lifting property of each ``eps_f``."""
    to, eo, tm, em = data.t_obj, data.eps_obj, data.t_mor, data.eps_mor
    n1 = len(B.cells1)
    if len(to) != B.n_obj or len(eo) != B.n_obj or len(tm) != n1 or len(em) != n1:
        return Check.failed("shape")
    for x in range(B.n_obj):
        if B.cells1[eo[x]] != (to[x], x):
            return Check.failed("eps_x shape", x)
    for f in range(n1):
        a, x = B.cells1[f]
        if B.cells1[tm[f]] != (to[x], a):
            return Check.failed("tf shape", f)
        if em[f] is None or B.cells2[em[f]] != (B.hcomp1[f, tm[f]], eo[x]):
            return Check.failed("eps_f shape", f)
    for x in range(B.n_obj):
        t1 = tm[B.id1[x]]
        if t1 != eo[x]:
            return Check.failed("t1_x = eps_x", x)
        if tm[t1] != B.id1[to[x]]:
            return Check.failed("t^2 1_x = 1_tx", x)
        if em[t1] != B.id2[t1]:
            return Check.failed("eps_{t1_x} = 1", x)
    for f in range(n1):
        a, x = B.cells1[f]
        for k in B.hom1(to[x], a):
            for beta in B.hom2(B.hcomp1[f, k], eo[x]):
                lifts = [b for b in B.hom2(k, tm[f]) if B.vcomp[em[f], B.whisker(f, b)] == beta]
                if len(lifts) != 1:
                    return Check.failed("right lifting", f, k, beta, len(lifts))
    return Check.passed()

from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from duplex.errors import (
    AdjunctionInvalid,
    ConditionsFail,
    GroupoidTooLarge,
    NoHom,
    NotGroupoid,
)
from duplex.fincat import (
    Adjunction,
    FinFunctor,
    NatTrans,
    enumerate_functors,
    identity_functor,
    poset_category,
    terminal_category,
)
from duplex.fixtures import category_fixtures, extended_fixtures, s3_table
from duplex.laxmod import check_monoidal, discrete_monoidal, monoidal_fixtures
from duplex.nerve import (
    NerveDuplicialData,
    TwoCatData,
    adjoint_to_duplicial,
    canonical_groupoid,
    check_2cat,
    check_2cat_duplicial,
    check_monoidal_duplicial,
    check_nerve_data,
    check_nerve_decalage,
    classify_category_structures,
    coreflection_duplicial,
    duplicial_to_adjoint,
    enumerate_left_adjoints,
    enumerate_nerve_data,
    internal_hom,
    locally_discrete,
    monoidal_2cat,
    monoidal_data,
    natural_automorphisms,
    nerve,
    nerve_2cat_data,
    pi1,
)
from duplex.simplicial import check_simplicial

CATS = category_fixtures()
SMALL = {k: C for k, C in extended_fixtures(6).items()}


def brute_chains(C, n):
    """Composable n-chains counted straight from the source/target tables."""
    if n == 0:
        return C.n_obj
    return sum(all(C.tgt[c[k]] == C.src[c[k + 1]] for k in range(n - 1))
               for c in product(C.morphisms, repeat=n))


# -- nerves ----------------------------------------------------------------------


@pytest.mark.parametrize("name", ["terminal", "arrow", "Z2", "span", "S3", "parallel_pair"])
def test_nerve_levels_and_identities(name):
    C = CATS[name]
    X = nerve(C, 3)
    assert check_simplicial(X)
    assert [X.levels[n] for n in range(4)] == [brute_chains(C, n) for n in range(4)]


def test_nerve_golden_sizes():
    assert [nerve(CATS["terminal"], 3).levels[n] for n in range(4)] == [1, 1, 1, 1]
    assert [nerve(CATS["arrow"], 3).levels[n] for n in range(4)] == [2, 3, 4, 5]
    assert [nerve(CATS["Z2"], 4).levels[n] for n in range(5)] == [1, 2, 4, 8, 16]


@pytest.mark.parametrize("name", sorted(CATS))
def test_right_decalage_is_sum_of_slices(name):
    assert check_nerve_decalage(CATS[name], 3)


# -- the two conditions ------------------------------------------------------------


def test_canonical_groupoid_structures():
    Z2 = CATS["Z2"]
    D = canonical_groupoid(Z2)
    assert D.t_mor == (0, 1)
    for name in ("Z2", "discrete2", "codiscrete2", "S3", "Z2+terminal"):
        r, F = check_nerve_data(CATS[name], canonical_groupoid(CATS[name]), 4)
        assert r and r.details["kind"] == "cyclic"
    assert canonical_groupoid(CATS["discrete3"]).t_mor == (0, 1, 2)
    with pytest.raises(NotGroupoid):
        canonical_groupoid(CATS["arrow"])


def test_arrow_carries_the_initial_object_structure():
    # t is constant at the initial object: t(0<=1) = 1_0, t(1_1) = 0<=1
    C = CATS["arrow"]
    assert enumerate_nerve_data(C) == [NerveDuplicialData((0, 0), (0, 2, 0))]
    r, F = check_nerve_data(C, enumerate_nerve_data(C)[0], 4)
    assert r and r.details["kind"] == "duplicial"


def test_cospan_and_idempotent_have_none():
    assert enumerate_nerve_data(CATS["cospan"]) == []
    assert enumerate_nerve_data(CATS["idempotent"]) == []


@pytest.mark.parametrize("name", [k for k, C in CATS.items() if C.n_mor <= 4])
def test_conditions_match_family_validity(name):
    # check_nerve_data raises if the conditions and the induced family disagree
    C = CATS[name]
    for D in enumerate_nerve_data(C, require=False):
        r, _ = check_nerve_data(C, D, 3)
        assert bool(r) == (D in enumerate_nerve_data(C))


def _has_initial_per_component(C):
    pi = pi1(C)
    P = pi.groupoid
    for a in P.objects:
        comp = [b for b in P.objects if P.hom(a, b)]
        if not any(all(len(C.hom(x, y)) == 1 for y in comp) for x in comp):
            return False
    return True


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3)), max_size=5))
def test_preorders_admit_structure_iff_initial_objects(rel):
    # in a preorder the left adjoint of p picks an initial object in each component
    C = poset_category(4, [(a, b) for a, b in rel if a != b])
    assert bool(enumerate_nerve_data(C)) == _has_initial_per_component(C)


# -- the fundamental groupoid --------------------------------------------------------


def test_pi1_examples():
    P = pi1(CATS["arrow"])
    assert P.groupoid.n_mor == 4 and P.groupoid.is_groupoid()
    assert all(len(P.groupoid.hom(a, b)) == 1 for a, b in product(range(2), repeat=2))
    assert pi1(CATS["idempotent"]).groupoid.n_mor == 1
    assert pi1(CATS["chain3"]).groupoid.n_mor == 9
    for name in ("Z3", "S3", "codiscrete2", "Z2+terminal"):
        C = CATS[name]
        P = pi1(C)
        assert P.groupoid.n_mor == C.n_mor and sorted(P.p.mor) == list(C.morphisms)


def test_pi1_of_free_monoid_exceeds_cap():
    with pytest.raises(GroupoidTooLarge):
        pi1(CATS["parallel_pair"], cap=1000)
    with pytest.raises(GroupoidTooLarge):
        pi1(CATS["S3"], cap=5)


@pytest.mark.parametrize("name", [k for k in sorted(CATS) if k != "parallel_pair"])
def test_pi1_universal_property(name):
    # functors into a groupoid factor uniquely through p
    C = CATS[name]
    P = pi1(C)
    G = P.groupoid
    assert G.is_groupoid() and all(G.is_iso(m) for m in P.p.mor)
    for H in (CATS["Z2"], CATS["Z3"], CATS["codiscrete2"], CATS["Z2+terminal"]):
        assert len(list(enumerate_functors(C, H))) == len(list(enumerate_functors(G, H)))
    # recorded zigzags evaluate back to each morphism through p
    for m in G.morphisms:
        out = G.ident[G.src[m]]
        for f, e in P.zigzags[m]:
            out = G.comp[P.p.mor[f] if e > 0 else G.inverse(P.p.mor[f]), out]
        assert out == m


# -- duplicial structure versus left adjoints ----------------------------------------------


@pytest.mark.parametrize("name", sorted(k for k, C in SMALL.items() if k != "parallel_pair"))
def test_theorem_round_trips(name):
    C = SMALL[name]
    P = pi1(C)
    data = enumerate_nerve_data(C)
    adjs = enumerate_left_adjoints(P)
    assert len(data) == len(adjs)
    for D in data:
        assert adjoint_to_duplicial(C, duplicial_to_adjoint(C, D, P=P)) == D
    for a in adjs:
        assert duplicial_to_adjoint(C, adjoint_to_duplicial(C, a), P=P) == a


def test_inverse_of_p_gives_canonical_data():
    C = CATS["S3"]
    P = pi1(C)
    i = P.induce(identity_functor(C), C.inverse)
    Pg = P.groupoid
    adj = Adjunction(i, P.p, NatTrans(identity_functor(Pg), i.then(P.p), list(Pg.ident)),
                     NatTrans(P.p.then(i), identity_functor(C), list(C.ident)))
    assert adjoint_to_duplicial(C, adj) == canonical_groupoid(C)


def test_duplicial_to_adjoint_rejects_bad_data():
    C = CATS["Z3"]
    with pytest.raises(ConditionsFail):
        duplicial_to_adjoint(C, NerveDuplicialData((0,), (1, 1, 1)))


def _coreflection():
    # 0 and 1 isomorphic, both below 2; the groupoid on {0, 1} is coreflective
    C = poset_category(3, [(0, 1), (1, 0), (0, 2)])
    G = poset_category(2, [(0, 1), (1, 0)])
    arrow = {(C.src[f], C.tgt[f]): f for f in C.morphisms}
    garrow = {(G.src[f], G.tgt[f]): f for f in G.morphisms}
    i = FinFunctor(G, C, [0, 1], [arrow[G.src[f], G.tgt[f]] for f in G.morphisms])
    ro = [0, 1, 0]
    r = FinFunctor(C, G, ro, [garrow[ro[C.src[f]], ro[C.tgt[f]]] for f in C.morphisms])
    unit = NatTrans(identity_functor(G), i.then(r), list(G.ident))
    counit = NatTrans(r.then(i), identity_functor(C), [arrow[ro[c], c] for c in C.objects])
    return C, i, r, unit, counit


def test_coreflection_duplicial():
    C, i, r, unit, counit = _coreflection()
    D = coreflection_duplicial(i, r, unit, counit)
    assert D in enumerate_nerve_data(C)
    assert check_nerve_data(C, D)[0]
    T = terminal_category()
    A = CATS["arrow"]
    i2 = FinFunctor(T, A, [0], [0])
    r2 = FinFunctor(A, T, [0, 0], [0, 0, 0])
    D2 = coreflection_duplicial(i2, r2, NatTrans(identity_functor(T), i2.then(r2), [0]),
                                NatTrans(r2.then(i2), identity_functor(A), [0, 2]))
    assert D2 == enumerate_nerve_data(A)[0]
    Z2 = CATS["Z2"]
    with pytest.raises(AdjunctionInvalid):
        one = identity_functor(Z2)
        coreflection_duplicial(one, one, NatTrans(one, one, [0]), NatTrans(one, one, [1]))
    with pytest.raises(NotGroupoid):
        coreflection_duplicial(identity_functor(A), identity_functor(A), None, None)


# -- census ------------------------------------------------------------------------------


def test_census_examples():
    Z2 = classify_category_structures(CATS["Z2"])
    assert Z2.cyclic == Z2.natural_automorphisms == 2
    d2 = classify_category_structures(CATS["discrete2"])
    assert (d2.structures, d2.cyclic) == (1, 1)
    S3 = classify_category_structures(CATS["S3"])
    assert (S3.structures, S3.paracyclic, S3.cyclic) == (6, 6, 1)
    # paracyclic but not cyclic structure on a contractible groupoid
    cd = classify_category_structures(CATS["codiscrete2"])
    assert (cd.structures, cd.paracyclic, cd.cyclic) == (4, 2, 1)
    arrow = classify_category_structures(CATS["arrow"])
    assert arrow.admits_duplicial and arrow.paracyclic == 0


@pytest.mark.parametrize("name", sorted(SMALL))
def test_census_invariants(name):
    C = SMALL[name]
    r = classify_category_structures(C)
    if not C.is_groupoid():
        assert r.paracyclic == 0
    else:
        assert r.cyclic == r.natural_automorphisms == len(natural_automorphisms(C))


# -- monoidal categories ------------------------------------------------------------------


def test_internal_hom_in_a_group():
    table = s3_table()
    M = discrete_monoidal(table)
    inv = [next(b for b in range(6) if table[a][b] == 0) for a in range(6)]
    for x, d in product(range(6), repeat=2):
        h, e = internal_hom(M, x, d)
        assert h == table[inv[x]][d] and e == d
    assert internal_hom(M, 0, 3) == (3, 3)


def test_internal_hom_missing():
    M = discrete_monoidal([[0, 1], [1, 1]])
    with pytest.raises(NoHom):
        internal_hom(M, 1, 0)


def test_monoidal_duplicial_examples():
    for d in range(6):
        r = check_monoidal_duplicial(discrete_monoidal(s3_table()), d)
        assert r.duplicial and r.star_autonomous and r.paracyclic
    r = check_monoidal_duplicial(discrete_monoidal([[0, 1], [1, 1]]), 0)
    assert not r.duplicial and "missing hom" in r.failure
    fx = monoidal_fixtures()
    # a Heyting chain is duplicial at every d without being star-autonomous
    r = check_monoidal_duplicial(fx["3-min"], 0)
    assert r.duplicial and not r.star_autonomous
    # the three-element Lukasiewicz chain is star-autonomous at the bottom
    r = check_monoidal_duplicial(fx["3-lukasiewicz"], 0)
    assert r.star_autonomous and r.duplicial
    r = check_monoidal_duplicial(fx["2-max"], 1)
    assert not r.duplicial and "unit map" in r.failure


@pytest.mark.parametrize("name", sorted(monoidal_fixtures()))
def test_monoidal_implications_and_two_cell_agreement(name):
    M = monoidal_fixtures()[name]
    assert check_monoidal(M)
    B = monoidal_2cat(M)
    assert check_2cat(B)
    for d in M.base.objects:
        r = check_monoidal_duplicial(M, d)
        assert all(r.implications().values())
        if r.homs and not r.duplicial:
            assert not check_2cat_duplicial(B, monoidal_data(M, d))
        elif r.duplicial:
            assert check_2cat_duplicial(B, monoidal_data(M, d))
    # d = i: homs into the unit normalize, so the unit map is the identity
    r = check_monoidal_duplicial(M, M.unit)
    if r.homs:
        assert r.duplicial


# -- strict 2-categories ------------------------------------------------------------------


@pytest.mark.parametrize("name", [k for k, C in CATS.items() if C.n_mor <= 4])
def test_locally_discrete_agrees_with_nerve_check(name):
    C = CATS[name]
    B = locally_discrete(C)
    assert check_2cat(B)
    for D in enumerate_nerve_data(C, require=False):
        assert bool(check_2cat_duplicial(B, nerve_2cat_data(C, D))) == bool(check_nerve_data(C, D, 3)[0])


def test_two_cell_failures_are_labelled():
    seen = set()
    for name, C in CATS.items():
        if C.n_mor > 4:
            continue
        for D in enumerate_nerve_data(C, require=False):
            seen.add(check_2cat_duplicial(locally_discrete(C), nerve_2cat_data(C, D)).failure)
    assert {"right lifting", "t^2 1_x = 1_tx", "eps_f shape"} <= seen


def test_wrong_dualizing_data_rejected():
    # Z2 as a discrete monoidal category with d = 1, then eps_x pointed at the unit
    M = discrete_monoidal([[0, 1], [1, 0]])
    good = monoidal_data(M, 1)
    assert check_2cat_duplicial(monoidal_2cat(M), good)
    bad = TwoCatData(good.t_obj, (0,), (0, 0), (0, 1))
    r = check_2cat_duplicial(monoidal_2cat(M), bad)
    assert not r


def test_canonical_structure_on_locally_discrete_groupoid():
    C = CATS["S3"]
    assert check_2cat_duplicial(locally_discrete(C), nerve_2cat_data(C, canonical_groupoid(C)))


def test_pi1_infinite_abelianization_short_circuits():
    with pytest.raises(GroupoidTooLarge, match="infinite abelianization"):
        pi1(CATS["parallel_pair"])

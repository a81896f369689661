import pytest

from duplex.duplicial import (
    check_duplicial_map,
    check_relations,
    classify_duplicial,
    decalage_map_to_family,
    duplicial_relations,
    extra_degeneracy_identities,
    family_to_decalage_map,
    identity_family,
)
from duplex.errors import DiagramsFail, NotDuplicial, TruncationTooShallow
from duplex.fixtures import category_fixtures
from duplex.nerve import canonical_groupoid_data, nerve, nerve_family
from duplex.simplicial import SetTarget, SimplicialMap, constant_simplicial, dec_object

CATS = category_fixtures()
RANK = {"invalid": 0, "duplicial": 1, "paracyclic": 2, "cyclic": 3}


def canonical(name, N=4):
    C = CATS[name]
    return nerve_family(C, *canonical_groupoid_data(C), N)


def arrow_initial(N=4):
    # t0 = t1 = 0, t(1_0) = 1_0, t(1_1) = (0<=1), t(0<=1) = 1_0
    return nerve_family(CATS["arrow"], (0, 0), (0, 2, 0), N)


def idempotent_bad(N=4):
    # functoriality holds but t^2(1) = e != 1
    return nerve_family(CATS["idempotent"], (0,), (1, 1), N)


def valid_families():
    out = {"const": identity_family(constant_simplicial(SetTarget(), 3, 4)),
           "const_aug": identity_family(constant_simplicial(SetTarget(), 2, 4, augmented=True)),
           "arrow_initial": arrow_initial(),
           "chain3_initial": nerve_family(CATS["chain3"], (0, 0, 0), _chain3_t(), 4)}
    for g in ("Z2", "Z3", "codiscrete2", "Z2xZ2", "discrete2"):
        out[f"canonical_{g}"] = canonical(g)
    return out


def _chain3_t():
    # t x = 0 and t(a<=b) = (0<=a)
    C = CATS["chain3"]
    arrow = {(C.src[f], C.tgt[f]): f for f in C.morphisms}
    return tuple(arrow[0, C.src[f]] for f in C.morphisms)


VALID = valid_families()


def test_constant_identity_is_cyclic():
    c = classify_duplicial(VALID["const"])
    assert c.kind == "cyclic" and str(c) == "cyclic@N=4"


def test_identity_on_arrow_nerve_invalid():
    X = nerve(CATS["arrow"], 4)
    c = classify_duplicial(identity_family(X))
    assert c.kind == "invalid"
    assert c.report.failure == "eq1" and c.report.witness == (0, 0)


def test_canonical_z2_cyclic():
    assert str(classify_duplicial(canonical("Z2"))) == "cyclic@N=4"


@pytest.mark.parametrize("name", sorted(VALID))
def test_valid_families(name):
    F = VALID[name]
    assert classify_duplicial(F).valid


def test_arrow_initial_not_paracyclic():
    assert classify_duplicial(arrow_initial()).kind == "duplicial"


@pytest.mark.parametrize("name", sorted(VALID))
def test_extra_degeneracy_identities(name):
    for label, n, i, lhs, rhs in extra_degeneracy_identities(VALID[name]):
        assert lhs == rhs, (label, n, i)


@pytest.mark.parametrize("name", sorted(VALID))
def test_monotone_classification(name):
    F = VALID[name]
    c = classify_duplicial(F)
    T = F.target
    paracyclic = all(T.inverse(t) is not None for t in F.t.values())
    assert (RANK[c.kind] >= 2) == paracyclic
    assert (RANK[c.kind] >= 1) == bool(check_relations(F))


@pytest.mark.parametrize("name", sorted(VALID))
def test_decalage_round_trip(name):
    F = VALID[name]
    m, diagrams = family_to_decalage_map(F)
    assert diagrams
    G = decalage_map_to_family(m, F.base)
    assert G.t == F.t
    # t_0 is forced to be d_1 t_1 s_0
    T, X = F.target, F.base
    assert F.t[0] == T.compose(X.d(1, 1), T.compose(F.t[1], X.s(0, 0)))
    m2, _ = family_to_decalage_map(G)
    assert m2 == m


def test_identity_decalage_map_on_constant():
    X = constant_simplicial(SetTarget(), 3, 3)
    m = SimplicialMap(dec_object(X, "right"), dec_object(X, "left"),
                      {n: X.ident(n + 1) for n in range(0, 3)})
    assert decalage_map_to_family(m, X).t == identity_family(X).t


def test_comult_square_detects_identity_condition():
    F = idempotent_bad()
    r = check_relations(F)
    assert not r and r.failure == "eq2" and r.witness[1] == 0
    with pytest.raises(NotDuplicial):
        family_to_decalage_map(F)
    X = F.base
    m = SimplicialMap(dec_object(X, "right"), dec_object(X, "left"),
                      {n: F.t[n + 1] for n in range(0, X.N)})
    with pytest.raises(DiagramsFail) as info:
        decalage_map_to_family(m, X)
    assert "comultiplication" in str(info.value)
    # the square at level n is the i = 0 case of eq (2) in degree n + 1
    first = min(n for label, n, i, lhs, rhs in duplicial_relations(F)
                if label == "eq2" and i == 0 and n >= 1 and lhs != rhs)
    assert info.value.witness == (first - 1,)


def test_round_trip_needs_truncation_two():
    F = canonical("Z2", 1)
    m, _ = family_to_decalage_map(F)
    with pytest.raises(TruncationTooShallow):
        decalage_map_to_family(m, F.base)


def test_duplicial_maps():
    F = canonical("Z3")
    X = F.base
    assert check_duplicial_map(F, F, {n: X.ident(n) for n in X.levels})
    # identity is simplicial but does not intertwine t f = -f with t' f = 1 - f
    G = nerve_family(CATS["Z3"], (0,), tuple((2 * g + 1) % 3 for g in range(3)), 4)
    assert classify_duplicial(G).valid
    assert not check_duplicial_map(F, G, {n: X.ident(n) for n in X.levels})

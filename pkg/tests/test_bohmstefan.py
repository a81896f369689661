import pytest

from duplex.bohmstefan import (
    LeftCoalgebra,
    RightCoalgebra,
    bs_operator,
    bs_operator_reversed,
    check_left_coalgebra,
    check_right_coalgebra,
    comparisons_inverse,
    enumerate_left_coalgebras,
    enumerate_right_coalgebras,
    iterate_comparison,
    lambda_power,
    soundness_sweep,
)
from duplex.duplicial import classify_duplicial
from duplex.errors import CoalgebraInvalid
from duplex.fincat import (
    DistributiveLaw,
    NatTrans,
    check_nat,
    enumerate_comonads,
    enumerate_distributive_laws,
    identity_comonad,
    identity_functor,
    identity_nat,
)
from duplex.fixtures import category_fixtures
from duplex.simplicial import CatTarget, constant_simplicial

CATS = category_fixtures()
ARROW = CATS["arrow"]


def coreflection():
    return [c for c in enumerate_comonads(ARROW) if c.endo.obj == (0, 0)][0]


def laws(A):
    out = []
    cs = enumerate_comonads(A)
    for g in cs:
        for h in cs:
            out += enumerate_distributive_laws(g, h)
    return out


def test_identity_law_forces_identity_xi():
    i = identity_comonad(ARROW)
    law = DistributiveLaw(i, i, identity_nat(i.endo.then(i.endo)))
    rights = enumerate_right_coalgebras(law)
    assert [(r.x, r.xi) for r in rights] == [(0, 0), (1, 1)]
    for r in rights:
        F = bs_operator(LeftCoalgebra(law, identity_functor(ARROW), identity_nat(i.endo)), r, 3)
        assert F.base == constant_simplicial(CatTarget(ARROW), r.x, 3, augmented=True)
        assert all(t == ARROW.ident[r.x] for t in F.t.values())
        assert classify_duplicial(F).kind == "cyclic"


def test_coreflection_right_coalgebras():
    g, i = coreflection(), identity_comonad(ARROW)
    law = DistributiveLaw(g, i, identity_nat(g.endo))
    rights = enumerate_right_coalgebras(law)
    assert [(r.x, r.xi) for r in rights] == [(0, g.counit[0]), (1, g.counit[1])]


def test_coreflection_bs_duplicial():
    g, i = coreflection(), identity_comonad(ARROW)
    law = DistributiveLaw(g, i, identity_nat(g.endo))
    lefts = enumerate_left_coalgebras(law)
    assert lefts
    for l in lefts:
        for r in enumerate_right_coalgebras(law):
            assert classify_duplicial(bs_operator(l, r, 4)).valid


def test_left_coalgebra_count_into_arrow():
    # f(eps_x) . phi_x = id: in a poset this forces f x = f 0; in a group f(eps_1) is invertible,
    # so every functor admits exactly one phi
    g, i = coreflection(), identity_comonad(ARROW)
    law = DistributiveLaw(g, i, identity_nat(g.endo))
    for P, expected in ((ARROW, 2), (CATS["chain3"], 3), (CATS["Z2"], 2)):
        lefts = enumerate_left_coalgebras(law, P=P)
        assert len(lefts) == expected
        assert all(l.f.obj[0] == l.f.obj[1] for l in lefts)


def test_bad_phi_rejected_by_counit_diagram():
    i = identity_comonad(ARROW)
    g = coreflection()
    law = DistributiveLaw(g, i, identity_nat(g.endo))
    f = identity_functor(ARROW)
    # phi: f h => f g must be natural with components x -> 0; only (0 <= 0, 0 <= 1) types exist
    phi = NatTrans(i.endo.then(f), g.endo.then(f), (0, 2))
    assert not check_nat(phi) or not check_left_coalgebra(LeftCoalgebra(law, f, phi))
    with pytest.raises(CoalgebraInvalid):
        bs_operator(LeftCoalgebra(law, f, phi), RightCoalgebra(law, 0, 0), 2)


def test_epsilon_diagram_named():
    # identity law on {1, e}: xi = e passes the delta diagram (e e = e) but not the counit one
    M = CATS["idempotent"]
    i = identity_comonad(M)
    law = DistributiveLaw(i, i, identity_nat(i.endo))
    r = check_right_coalgebra(RightCoalgebra(law, 0, 1))
    assert not r and r.failure == "epsilon diagram"
    f = identity_functor(M)
    bad = check_left_coalgebra(LeftCoalgebra(law, f, NatTrans(i.endo, i.endo, (1,))))
    assert not bad and bad.failure == "epsilon diagram"


@pytest.mark.parametrize("name", ["chain3", "span", "Z2xZ2", "codiscrete2"])
def test_lambda_power(name):
    A = CATS[name]
    for law in laws(A)[:40]:
        g = law.g
        assert lambda_power(law, 0).comp == tuple(A.ident[law.h.endo.obj[x]] for x in A.objects)
        assert lambda_power(law, 1).comp == law.lam.comp
        for n in range(0, 4):
            ln = lambda_power(law, n)
            assert check_nat(ln)
            nxt = lambda_power(law, n + 1)
            for x in A.objects:
                # lambda^{n+1} = (lambda g^n) . (g lambda^n)
                gnx = g.power(n).obj[x]
                assert nxt[x] == A.compose(law.lam[gnx], g.endo.mor[ln[x]])
        l2 = lambda_power(law, 2)
        for x in A.objects:
            assert l2[x] == A.compose(law.lam[g.endo.obj[x]], g.endo.mor[law.lam[x]])


@pytest.mark.parametrize("name", ["arrow", "chain3", "span", "codiscrete2", "Z3", "S3"])
def test_bs_sweep(name):
    instances, failures = soundness_sweep({name: CATS[name]}, 4)
    assert instances > 0 and failures == []


@pytest.mark.parametrize("name", ["arrow", "chain3", "cospan", "Z2xZ2"])
def test_comparisons_verified_and_inverse_iff_cyclic(name):
    A = CATS[name]
    seen = 0
    for law in laws(A):
        rights = enumerate_right_coalgebras(law)
        if not rights:
            continue
        for l in enumerate_left_coalgebras(law):
            for r in rights:
                R = iterate_comparison(l, r, 4, "g_to_h")
                L = iterate_comparison(l, r, 4, "h_to_g")
                assert R and L, (R.report, L.report)
                both_cyclic = classify_duplicial(R.source).kind == "cyclic" and \
                    classify_duplicial(R.target).kind == "cyclic"
                assert bool(comparisons_inverse(R, L)) == both_cyclic
                seen += 1
    assert seen


def test_reversed_family_is_duplicial():
    A = CATS["chain3"]
    for law in laws(A)[:30]:
        for r in enumerate_right_coalgebras(law):
            for l in enumerate_left_coalgebras(law)[:5]:
                assert classify_duplicial(bs_operator_reversed(l, r, 4)).valid

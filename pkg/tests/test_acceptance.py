"""The acceptance suite: one test per criterion, each printing a pass/fail line in the summary."""

import random
import time
from itertools import product

import numpy as np
import pytest

from duplex.abelian import FinAb
from duplex.bohmstefan import (
    bs_instances,
    bs_operator,
    bs_operator_reversed,
    comparisons_inverse,
    iterate_comparison,
    soundness_sweep,
)
from duplex.dupcat import compose_duplicial, random_operator
from duplex.dupcat import soundness_sweep as rewriting_sweep
from duplex.duplicial import classify_duplicial, decalage_map_to_family, family_to_decalage_map, identity_family
from duplex.errors import GroupoidTooLarge
from duplex.fincat import discrete_category, enumerate_comonads, identity_functor, terminal_category
from duplex.fixtures import category_fixtures, extended_fixtures, s3_table, small_monoids
from duplex.hochschild import (
    quotient_bimodule_zmod,
    regular_bimodule,
    ring_fixtures,
    verify_adjunctions,
    zeroth_cohomology,
    zeroth_homology,
)
from duplex.laxmod import bs_cap, discrete_monoidal, lax_h0, monoidal_fixtures, uct_bijection
from duplex.laxmod import regular_bimodule as mon_regular
from duplex.nerve import (
    adjoint_to_duplicial,
    canonical_groupoid_data,
    check_monoidal_duplicial,
    classify_category_structures,
    duplicial_to_adjoint,
    enumerate_left_adjoints,
    enumerate_nerve_data,
    natural_automorphisms,
    nerve,
    nerve_family,
    pi1,
)
from duplex.simplicial import SetTarget, bar_resolution, constant_simplicial, dec_object

CATS = category_fixtures()
N = 4


def criterion(num, title):
    return pytest.mark.criterion(num, title)


# -- 1 ---------------------------------------------------------------------------


@criterion("1", "bar-resolution duplicial soundness sweep")
def test_criterion_1_soundness_sweep():
    cats = extended_fixtures(8)
    start = time.perf_counter()
    instances, failures = soundness_sweep(cats, N)
    elapsed = time.perf_counter() - start
    print(f"{instances} instances over {len(cats)} categories, "
          f"{len(failures)} failures, {elapsed:.1f}s")
    assert instances > 10000
    assert failures == []
    assert elapsed < 600


# -- 2 ---------------------------------------------------------------------------


def _initial_chain3(deg):
    C = CATS["chain3"]
    arrow = {(C.src[f], C.tgt[f]): f for f in C.morphisms}
    return nerve_family(C, (0, 0, 0), tuple(arrow[0, C.src[f]] for f in C.morphisms), deg)


@criterion("2", "rewriting soundness up to degree 6")
def test_criterion_2_rewriting():
    fams = {"Z2": nerve_family(CATS["Z2"], *canonical_groupoid_data(CATS["Z2"]), 6),
            "chain3_initial": _initial_chain3(6)}
    pairs = 0
    for name, F in fams.items():
        r = rewriting_sweep(F, 6)
        assert r, (name, r)
        pairs += r.details["pairs"]
    rng = random.Random(0)
    for _ in range(1000):
        d = [rng.randint(0, 6) for _ in range(4)]
        c, b, a = (random_operator(rng, d[k], d[k + 1]) for k in range(3))
        assert compose_duplicial(a, compose_duplicial(b, c)) == compose_duplicial(compose_duplicial(a, b), c)
    print(f"{pairs} evaluated pairs, 1000 associativity triples")


# -- 3 ---------------------------------------------------------------------------


def _valid_families():
    out = {"const": identity_family(constant_simplicial(SetTarget(), 3, N)),
           "const_aug": identity_family(constant_simplicial(SetTarget(), 2, N, augmented=True))}
    for name, C in CATS.items():
        X = nerve(C, N)
        for k, D in enumerate(enumerate_nerve_data(C)):
            out[f"{name}/{k}"] = nerve_family(C, D.t_obj, D.t_mor, N, X)
    for name in ("arrow", "chain3", "Z2"):
        for k, (law, l, r) in enumerate(bs_instances(CATS[name])):
            if k % 7 == 0:
                out[f"bs/{name}/{k}"] = bs_operator(l, r, N)
    return out


def _simplicial_objects():
    out = {"const": constant_simplicial(SetTarget(), 3, N),
           "const_aug": constant_simplicial(SetTarget(), 2, N, augmented=True)}
    for name, C in CATS.items():
        out[f"nerve/{name}"] = nerve(C, N)
    A = CATS["chain3"]
    for k, g in enumerate(enumerate_comonads(A)):
        out[f"bar/chain3/{k}"] = bar_resolution(g, identity_functor(A), 2, N)
    return out


@criterion("3", "family and decalage-map round trips")
def test_criterion_3_round_trips():
    fams = _valid_families()
    for name, F in fams.items():
        assert classify_duplicial(F).valid, name
        m, diagrams = family_to_decalage_map(F)
        assert diagrams, name
        G = decalage_map_to_family(m, F.base)
        assert G.t == F.t, name
        T, X = F.target, F.base
        assert F.t[0] == T.compose(X.d(1, 1), T.compose(F.t[1], X.s(0, 0))), name
        assert family_to_decalage_map(G)[0] == m, name
    objs = _simplicial_objects()
    for name, X in objs.items():
        assert dec_object(dec_object(X, "left"), "right") == dec_object(dec_object(X, "right"), "left"), name
    print(f"{len(fams)} families round-tripped, {len(objs)} objects with commuting decalages")


# -- 4 ---------------------------------------------------------------------------


def _mat(code):
    return np.array([(code >> k) & 1 for k in range(4)]).reshape(2, 2)


def _f2_rank(rows):
    rows = [r % 2 for r in rows]
    rank = 0
    for col in range(4):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                rows[i] = (rows[i] + rows[rank]) % 2
        rank += 1
    return rank


@criterion("4", "Hochschild golden values")
def test_criterion_4_hochschild():
    start = time.perf_counter()
    rings = ring_fixtures()
    M2 = rings["M2(F2)"]
    X = regular_bimodule(M2)
    # the table encoding really is 2x2 matrices over F2
    assert all((_mat(M2.mul[a][b]) == (_mat(a) @ _mat(b)) % 2).all() for a, b in product(range(16), repeat=2))
    comms = [((_mat(a) @ _mat(b) - _mat(b) @ _mat(a)) % 2).reshape(4) for a, b in product(range(16), repeat=2)]
    assert zeroth_homology(M2, X).invariant_factors == (2,) and 4 - _f2_rank(comms) == 1
    centre = [a for a in range(16) if all(M2.mul[a][b] == M2.mul[b][a] for b in range(16))]
    H0 = zeroth_cohomology(M2, X)
    assert H0.invariant_factors == (2,) and list(H0.elements) == centre and len(centre) == 2
    commutative = [k for k, A in rings.items() if A.is_commutative()]
    for k in commutative:
        A = rings[k]
        R = regular_bimodule(A)
        assert zeroth_homology(A, R).invariant_factors == A.ab.group.factors, k
        assert zeroth_homology(A, R).free_rank == 0, k
        assert zeroth_cohomology(A, R).invariant_factors == A.ab.group.factors, k
    elapsed = time.perf_counter() - start
    print(f"M2(F2) gives Z/2 twice; {len(commutative)} commutative rings; {elapsed:.1f}s")
    assert elapsed < 60


# -- 5 ---------------------------------------------------------------------------


@criterion("5", "adjunction and universal-coefficient bijections")
def test_criterion_5_bijections():
    rings = ring_fixtures()
    cases = 0
    for name in ("Z/2", "Z/3", "Z/4", "F2[x]/x^2", "M2(F2)"):
        A = rings[name]
        for P in (FinAb(()), FinAb((2,)), FinAb((4,))):
            r = verify_adjunctions(A, regular_bimodule(A), P)
            assert r, (name, P, r)
            assert r.details["H_0 side"][0] == r.details["H_0 side"][1], name
            assert r.details["H^0 side"][0] == r.details["H^0 side"][1], name
            cases += 1
    r = verify_adjunctions(rings["Z/4"], quotient_bimodule_zmod(4, 2), FinAb((2,)))
    assert r
    z = {k: [[(a + b) % k for b in range(k)] for a in range(k)] for k in (2, 3)}
    arrow = CATS["arrow"]
    for mult in (z[2], z[3], s3_table()):
        for P in (terminal_category(), discrete_category(2), arrow):
            r = uct_bijection(mon_regular(discrete_monoidal(mult)), P)
            assert r, r
            n, m = r.details["objects"]
            assert n == m
            cases += 1
    print(f"{cases} bijections verified at object and morphism level")


# -- 6 ---------------------------------------------------------------------------


@criterion("6", "lax centre counts")
def test_criterion_6_lax_centre():
    S3 = lax_h0(mon_regular(discrete_monoidal(s3_table())))
    assert len(S3.objects) == 1
    monoids = [m for order in (1, 2, 3, 4) for m in small_monoids(order)]
    monoids += [[[(a + b) % k for b in range(k)] for a in range(k)] for k in (5, 6)]
    commutative = [m for m in monoids if all(m[a][b] == m[b][a] for a in range(len(m)) for b in range(len(m)))]
    for m in commutative:
        assert len(lax_h0(mon_regular(discrete_monoidal(m))).objects) == len(m)
    print(f"S3 has 1 central object; {len(commutative)} commutative monoids have all")


# -- 7 ---------------------------------------------------------------------------


@criterion("7", "duplicial data versus left adjoints of p")
def test_criterion_7_nerve_theorem():
    small = extended_fixtures(6)
    checked = groupoids = 0
    for name, C in small.items():
        data = enumerate_nerve_data(C)
        try:
            P = pi1(C)
        except GroupoidTooLarge:
            # Pi_1 infinite: no left adjoint can exist, and the search agrees
            assert name == "parallel_pair" and data == []
            continue
        adjs = enumerate_left_adjoints(P)
        assert len(data) == len(adjs), name
        for D in data:
            assert adjoint_to_duplicial(C, duplicial_to_adjoint(C, D, P=P)) == D, name
        for a in adjs:
            assert duplicial_to_adjoint(C, adjoint_to_duplicial(C, a), P=P) == a, name
        rep = classify_category_structures(C, N)
        if C.is_groupoid():
            groupoids += 1
            assert classify_duplicial(nerve_family(C, *canonical_groupoid_data(C), N)).kind == "cyclic", name
            assert rep.cyclic == rep.natural_automorphisms == len(natural_automorphisms(C)), name
        else:
            assert rep.paracyclic == 0, name
        checked += 1
    print(f"{checked} categories round-tripped, {groupoids} groupoids")


# -- 8 ---------------------------------------------------------------------------


@criterion("8", "monoidal implications")
def test_criterion_8_monoidal():
    fx = monoidal_fixtures()
    reports = 0
    for name, M in fx.items():
        A = M.base
        group = A.is_groupoid() and A.n_mor == A.n_obj and _is_group(M)
        for d in A.objects:
            r = check_monoidal_duplicial(M, d)
            assert all(r.implications().values()), (name, d)
            if group:
                assert r.duplicial and r.star_autonomous and r.paracyclic, (name, d)
            reports += 1
    print(f"{reports} reports over {len(fx)} monoidal categories")


def _is_group(M):
    objs = list(M.base.objects)
    return all(any(M.tensor(a, b) == M.unit for b in objs) for a in objs)


# -- 9 ---------------------------------------------------------------------------


@pytest.fixture(scope="module")
def cap_sweep():
    rows = []
    for name, A in CATS.items():
        for law, l, r in bs_instances(A):
            F = bs_cap(l, r, N)
            rows.append((name, l, r, F, F == bs_operator(l, r, N, validate=False),
                         F == bs_operator_reversed(l, r, N, validate=False)))
    return rows


@criterion("9", "cap route equals bs_operator table for table")
@pytest.mark.xfail(strict=True, reason="the route lands on the reversed h-side family; equal only on posets")
def test_criterion_9_cap_equals_bs_operator(cap_sweep):
    mismatches = [name for name, *_, direct, _ in cap_sweep if not direct]
    print(f"{len(cap_sweep) - len(mismatches)}/{len(cap_sweep)} instances equal bs_operator")
    assert not mismatches, f"{len(mismatches)} mismatches, first on {mismatches[0]}"


@criterion("9*", "cap route equals the reversed family; comparison maps verified")
def test_criterion_9_cap_up_to_comparison(cap_sweep):
    posets = {"terminal", "discrete2", "discrete3", "arrow", "chain3", "span", "cospan", "arrow+terminal"}
    for name, l, r, F, direct, reversed_ in cap_sweep:
        assert reversed_, name
        if name in posets:
            assert direct, name
        if not direct:
            R = iterate_comparison(l, r, N, "g_to_h")
            L = iterate_comparison(l, r, N, "h_to_g")
            assert R and L, name
            cyclic = classify_duplicial(R.source).kind == classify_duplicial(R.target).kind == "cyclic"
            assert bool(comparisons_inverse(R, L)) == cyclic, name
    print(f"{len(cap_sweep)} instances equal the reversed family")

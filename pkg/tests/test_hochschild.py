from itertools import product

import numpy as np
import pytest

from duplex.abelian import FinAb, cyclic
from duplex.errors import BudgetExceeded, InvalidStructure
from duplex.hochschild import (
    FinBimoduleAb,
    FinRing,
    bimodule_from_maps,
    bimodule_maps,
    coequalizer_of_complex,
    equalizer_of_complex,
    hochschild_complex,
    homology_projection,
    induced_homology_map,
    is_bimodule_map,
    quotient_bimodule_zmod,
    regular_bimodule,
    ring_fixtures,
    verify_adjunctions,
    zero_bimodule,
    zeroth_cohomology,
    zeroth_homology,
    zmod_ring,
)
from duplex.simplicial import check_simplicial

RINGS = ring_fixtures()
COMMUTATIVE = [k for k, A in RINGS.items() if A.is_commutative()]
M2 = RINGS["M2(F2)"]


def _mat(code):
    """Independent decoding of the 2x2 matrix encoding: row-major bits, low bit first."""
    return np.array([(code >> k) & 1 for k in range(4)]).reshape(2, 2)


def _f2_rank(rows):
    rows = [r.copy() % 2 for r in rows]
    rank, col = 0, 0
    ncols = len(rows[0]) if rows else 0
    while rank < len(rows) and col < ncols:
        piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                rows[i] = (rows[i] + rows[rank]) % 2
        rank += 1
        col += 1
    return rank


def test_matrix_ring_encoding_agrees_with_numpy():
    for a, b in product(range(16), repeat=2):
        assert (_mat(M2.mul[a][b]) == (_mat(a) @ _mat(b)) % 2).all()


def test_h0_matrix_ring_golden():
    # commutators ab - ba over all 256 pairs span a subspace of F2^4; quotient dimension 1
    comms = [((_mat(a) @ _mat(b) - _mat(b) @ _mat(a)) % 2).reshape(4) for a, b in product(range(16), repeat=2)]
    assert 4 - _f2_rank(comms) == 1
    # the trace kills every commutator and is onto
    assert all(int(c[0] + c[3]) % 2 == 0 for c in comms)
    H = zeroth_homology(M2, regular_bimodule(M2))
    assert H.invariant_factors == (2,) and H.free_rank == 0


def test_h0_cohomology_matrix_ring_golden():
    centre = [a for a in range(16)
              if all(((_mat(a) @ _mat(b) - _mat(b) @ _mat(a)) % 2 == 0).all() for b in range(16))]
    assert [(_mat(c) == np.eye(2, dtype=int) * k).all() for c, k in zip(centre, (0, 1))] == [True, True]
    H0 = zeroth_cohomology(M2, regular_bimodule(M2))
    assert list(H0.elements) == centre
    assert H0.invariant_factors == (2,)


@pytest.mark.parametrize("name", COMMUTATIVE)
def test_commutative_rings(name):
    A = RINGS[name]
    X = regular_bimodule(A)
    assert zeroth_homology(A, X).invariant_factors == A.ab.group.factors
    H0 = zeroth_cohomology(A, X)
    assert H0.order == A.n and H0.invariant_factors == A.ab.group.factors


def test_zero_module():
    A = RINGS["Z/4"]
    assert zeroth_homology(A, zero_bimodule(A)).order == 1


def test_canonical_actions_fix_everything():
    # Z/4 acting on Z/2 x Z/2 through the integers: ax = xa, so H^0 is everything
    add = [[a ^ b for b in range(4)] for a in range(4)]

    def mult(k, x):
        out = 0
        for _ in range(k):
            out ^= x
        return out

    X = bimodule_from_maps(RINGS["Z/4"], add, mult, lambda x, k: mult(k, x))
    assert zeroth_cohomology(RINGS["Z/4"], X).order == 4
    assert zeroth_homology(RINGS["Z/4"], X).invariant_factors == (2, 2)


def test_chain_level_one_for_z2():
    A = RINGS["Z/2"]
    C = hochschild_complex(A, regular_bimodule(A), 2)
    assert C.levels[1] == FinAb((2,))
    assert C.d(1, 0) == C.d(1, 1)


def test_degeneracy_inserts_unit():
    A = RINGS["Z/4"]
    X = regular_bimodule(A)
    C = hochschild_complex(A, X, 1)
    basis = C.meta["bases"][1][0]
    # s_0(x) = 1 (x) x, i.e. the coordinates of the pure tensor with first factor 1
    from duplex.abelian import expand_pure_tensor
    for x in X.elements:
        img = C.s(0, 0)(X.ab.coords(x))
        assert img == C.levels[1].norm(expand_pure_tensor(basis, [A.ab.coords(A.one), X.ab.coords(x)]))


@pytest.mark.parametrize("name", sorted(RINGS))
def test_complexes_are_simplicial(name):
    A = RINGS[name]
    X = regular_bimodule(A)
    N = 3 if A.n <= 9 else 2
    assert check_simplicial(hochschild_complex(A, X, N))
    assert check_simplicial(hochschild_complex(A, X, N, "cochain"))


def test_matrix_ring_complexes_n3():
    X = regular_bimodule(M2)
    assert check_simplicial(hochschild_complex(M2, X, 3))
    assert check_simplicial(hochschild_complex(M2, X, 3, "cochain"))


def test_low_faces_match_displayed_formulas():
    A = M2
    X = regular_bimodule(A)
    C = hochschild_complex(A, X, 2)
    basis = C.meta["bases"][1][0]
    from duplex.abelian import expand_pure_tensor
    for a, x in product(A.ab.basis(), X.ab.basis()):
        v = C.levels[1].norm(expand_pure_tensor(basis, [A.ab.coords(a), X.ab.coords(x)]))
        assert C.d(1, 0)(v) == X.ab.coords(X.right[x][a])
        assert C.d(1, 1)(v) == X.ab.coords(X.left[a][x])
    D = hochschild_complex(A, X, 1, "cochain")
    for x, a in product(X.elements, A.ab.basis()):
        # delta_0(x)(a) = xa and delta_1(x)(a) = ax, read off on the generator a
        k = A.ab.basis().index(a)
        tb, cb, G = D.meta["bases"][1]
        for i, fn in ((0, lambda: X.right[x][a]), (1, lambda: X.left[a][x])):
            c = D.d(1, i)(X.ab.coords(x))
            vals = [0] * X.ab.group.rank
            for coef, (kk, j, h) in zip(c, cb):
                if tb[kk][0] == (k,):
                    vals[j] += coef * (X.ab.group.factors[j] // h)
            assert X.ab.group.norm(vals) == X.ab.coords(fn())


@pytest.mark.parametrize("name", sorted(RINGS))
def test_coequalizer_and_equalizer_consistency(name):
    A = RINGS[name]
    X = regular_bimodule(A)
    assert coequalizer_of_complex(hochschild_complex(A, X, 1)).invariant_factors == \
        zeroth_homology(A, X).invariant_factors
    assert equalizer_of_complex(hochschild_complex(A, X, 1, "cochain"), X).elements == \
        zeroth_cohomology(A, X).elements


@pytest.mark.parametrize("name", sorted(RINGS))
def test_centre_closed_under_multiplication(name):
    A = RINGS[name]
    Z = zeroth_cohomology(A, regular_bimodule(A))
    assert all(A.mul[a][b] in Z for a in Z.elements for b in Z.elements)


def test_functoriality_of_h0():
    A = zmod_ring(4)
    X, Y = regular_bimodule(A), quotient_bimodule_zmod(4, 2)
    theta = tuple(x % 2 for x in X.elements)
    assert is_bimodule_map(X, Y, theta)
    f, HX, HY = induced_homology_map(A, X, Y, theta)
    px, py = homology_projection(A, X, HX), homology_projection(A, Y, HY)
    assert all(f(px[x]) == py[theta[x]] for x in X.elements)
    H0X, H0Y = zeroth_cohomology(A, X), zeroth_cohomology(A, Y)
    assert all(theta[x] in H0Y for x in H0X.elements)


def test_functoriality_noncommutative():
    # bimodule endomorphisms of the regular module are multiplication by central elements
    X = regular_bimodule(M2)
    ends = bimodule_maps(X, X)
    assert len(ends) == 2
    H = zeroth_homology(M2, X)
    proj = homology_projection(M2, X, H)
    for theta in ends:
        f, _, _ = induced_homology_map(M2, X, X, theta)
        assert all(f(proj[x]) == proj[theta[x]] for x in X.elements)


@pytest.mark.parametrize("A,X,P,sizes", [
    ("Z/2", None, (2,), (2, 2)),
    ("Z/2", None, (), (1, 1)),
    ("Z/4", "Z/2", (4,), (2, 2)),
    ("Z/3", None, (3,), (3, 3)),
    ("F2[x]/x^2", None, (2,), (4, 4)),
])
def test_verify_adjunctions(A, X, P, sizes):
    ring = RINGS[A]
    M = regular_bimodule(ring) if X is None else quotient_bimodule_zmod(ring.n, 2)
    r = verify_adjunctions(ring, M, FinAb(P))
    assert r, r
    assert r.details["H_0 side"][0] == r.details["H_0 side"][1] == sizes[0]
    assert r.details["H^0 side"][0] == r.details["H^0 side"][1] == sizes[1]


def test_verify_adjunctions_matrix_ring():
    r = verify_adjunctions(M2, regular_bimodule(M2), cyclic(2))
    assert r and r.details["H_0 side"] == (2, 2) and r.details["H^0 side"] == (2, 2)


def test_invalid_ring_and_bimodule():
    with pytest.raises(InvalidStructure):
        FinRing([[0, 1], [1, 0]], [[0, 0], [0, 0]], 0, 1)  # 1 is not a unit
    A = zmod_ring(2)
    with pytest.raises(InvalidStructure):
        # right action by 1 is not the identity
        FinBimoduleAb(A, [[0, 1], [1, 0]], [[0, 0], [0, 1]], [[0, 0], [0, 0]])


def test_budget():
    X = regular_bimodule(M2)
    with pytest.raises(BudgetExceeded):
        hochschild_complex(M2, X, 3, max_generators=100)

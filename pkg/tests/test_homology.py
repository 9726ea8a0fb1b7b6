import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from conftest import FIXTURES
from palindromic.homology import (
    ChainComplex,
    CoefficientError,
    InternalConsistencyError,
    SparseMatrix,
    boundary_matrices,
    cohomology,
    homology,
    parse_coefficients,
    reduced_homology_vanishes,
    smith_normal_form,
    sparse_invariant_factors,
)
from palindromic.intmatrix import IntegerMatrix
from palindromic.moduli import build_complex, p_sigma, sigma
from palindromic.serialize import read_complex

matrices = st.integers(1, 6).flatmap(
    lambda r: st.integers(1, 6).flatmap(
        lambda c: st.lists(st.lists(st.integers(-5, 5), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


def test_small_smith_forms():
    assert smith_normal_form(IntegerMatrix.identity(3)).factors == [1, 1, 1]
    snf = smith_normal_form([[2, 0], [0, 0]])
    assert snf.factors == [2] and snf.rank == 1
    assert smith_normal_form([[2, 4], [6, 8]]).factors == [2, 4]


@given(matrices)
@settings(max_examples=150, deadline=None)
def test_smith_form_matches_minors_oracle(m):
    snf = smith_normal_form(m, transforms=True)
    assert snf.factors == oracles.invariant_factors_by_minors(m)
    assert all(b % a == 0 for a, b in zip(snf.factors, snf.factors[1:]))
    assert snf.left @ IntegerMatrix(m) @ snf.right == snf.diagonal()


def test_sparse_factors_agree_with_dense():
    rng = random.Random(7)
    for _ in range(50):
        r, c = rng.randint(1, 8), rng.randint(1, 8)
        m = [[rng.choice([0, 0, 0, 1, -1, 2, 3]) for _ in range(c)] for _ in range(r)]
        sp = SparseMatrix(r, c, {(i, j): x for i, row in enumerate(m) for j, x in enumerate(row) if x})
        assert sparse_invariant_factors(sp) == smith_normal_form(m).factors


def test_coefficient_parsing():
    assert parse_coefficients("Z") == "Z"
    assert parse_coefficients("q") == "Q"
    assert parse_coefficients("Fp:5") == 5
    assert parse_coefficients(7) == 7
    for bad in ("Fp:4", "R", 9):
        with pytest.raises(CoefficientError):
            parse_coefficients(bad)


def test_boundary_of_point_and_path():
    assert boundary_matrices(build_complex(p_sigma(3, 3))).boundaries == []
    d1 = boundary_matrices(build_complex(sigma(2))).boundaries[0]
    assert (d1.rows, d1.cols) == (3, 2)
    assert all(s == 0 for s in d1.column_sums())


@pytest.mark.parametrize("family", [p_sigma(3, 5), sigma(3), sigma(4)])
def test_boundary_squares_to_zero_and_rank_nullity(family):
    cc = boundary_matrices(build_complex(family))
    for a, b in zip(cc.boundaries, cc.boundaries[1:]):
        assert (a @ b).is_zero()
    for coeff in ("Q", 3):
        h = homology(cc, coeff)
        assert h.euler_characteristic() == cc.euler_characteristic()
        assert all(b >= 0 for b in h.betti)


def test_d_squared_nonzero_is_reported():
    d1 = SparseMatrix(1, 1, {(0, 0): 1})
    d2 = SparseMatrix(1, 1, {(0, 0): 1})
    with pytest.raises(InternalConsistencyError):
        ChainComplex([1, 1, 1], [d1, d2]).check()


def test_p_case_integral_homology():
    h = homology(boundary_matrices(build_complex(p_sigma(3, 5))), "Z")
    assert h.betti == [1, 0, 0] and h.torsion == [[], [], []]
    assert reduced_homology_vanishes(h)


@pytest.mark.parametrize("n", [3, 4])
def test_sigma_top_cohomology_vanishes(n):
    cc = boundary_matrices(build_complex(sigma(n)))
    for coeff in ("Q", 3, 5):
        assert cohomology(cc, coeff).vanishes_in(n - 1)


def test_circle_fixture():
    cc = boundary_matrices(read_complex(FIXTURES / "circle.yaml"))
    h = homology(cc, "Z")
    assert h.betti == [1, 1] and h.describe(1) == "Z"
    assert not reduced_homology_vanishes(h)


def test_torsion_and_universal_coefficients():
    # RP^2 style chain complex: C2 -> C1 multiplication by 2
    cc = ChainComplex([1, 1, 1], [SparseMatrix(1, 1, {}), SparseMatrix(1, 1, {(0, 0): 2})])
    h = homology(cc, "Z")
    assert h.torsion[1] == [2] and h.betti == [1, 0, 0]
    co = cohomology(cc, "Z")
    assert co.torsion[2] == [2] and co.betti == [1, 0, 0]
    assert homology(cc, 2).betti == [1, 1, 1]
    assert homology(cc, 3).betti == [1, 0, 0]

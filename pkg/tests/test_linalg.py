from fractions import Fraction
from itertools import combinations, product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import integer_member, small_int_matrices
from hyperrank.gkz import build_family, family_kernel_basis
from hyperrank.linalg import (
    IntMatrix,
    determinant,
    format_rat,
    gcd_maximal_minors,
    hermite_normal_form,
    integer_kernel_basis,
    lattice_contains,
    lattice_equal,
    rational_rank,
)


def _is_hnf(H: IntMatrix) -> bool:
    last = -1
    zero_seen = False
    for i in range(H.rows):
        row = H.row(i)
        piv = next((j for j, x in enumerate(row) if x), None)
        if piv is None:
            zero_seen = True
            continue
        if zero_seen or piv <= last or row[piv] <= 0:
            return False
        for k in range(i):
            if not 0 <= H[k, piv] < row[piv]:
                return False
        last = piv
    return True


def brute_rank(rows):
    """Largest k with a nonzero k x k minor."""
    if not rows:
        return 0
    m, n = len(rows), len(rows[0])
    for k in range(min(m, n), 0, -1):
        for rs in combinations(range(m), k):
            for cs in combinations(range(n), k):
                if determinant([[rows[i][j] for j in cs] for i in rs]) != 0:
                    return k
    return 0


def test_hnf_identity():
    I3 = IntMatrix.identity(3)
    assert hermite_normal_form(I3) == (I3, I3)


def test_hnf_two_by_two():
    M = IntMatrix.from_rows([[2, 4], [1, 3]])
    H, U = hermite_normal_form(M)
    assert U @ M == H
    assert abs(determinant(U.to_rows())) == 1
    assert H == IntMatrix.from_rows([[1, 1], [0, 2]])
    # the unreduced form [[1,3],[0,2]] spans the same row lattice
    assert lattice_equal(H.transpose(), IntMatrix.from_rows([[1, 3], [0, 2]]).transpose())


def test_hnf_family_rank():
    A, _ = build_family(3)
    H, U = hermite_normal_form(A.transpose())
    nonzero = sum(1 for i in range(H.rows) if any(H.row(i)))
    assert nonzero == 3 == rational_rank(A.to_rows())
    assert U @ A.transpose() == H


@settings(max_examples=150, deadline=None)
@given(small_int_matrices())
def test_hnf_properties(M):
    H, U = hermite_normal_form(M)
    assert U @ M == H
    assert abs(determinant(U.to_rows())) == 1
    assert _is_hnf(H)


def test_kernel_quadratic_example():
    K = integer_kernel_basis(IntMatrix.from_rows([[1, 1, 1], [2, 1, 0]]))
    assert K.cols == 1
    assert K.column(0) in ((1, -2, 1), (-1, 2, -1))


def test_kernel_identity_empty():
    K = integer_kernel_basis(IntMatrix.identity(4))
    assert K.shape == (4, 0)


def test_kernel_family_d4_matches_explicit_basis():
    A, _ = build_family(4)
    K = integer_kernel_basis(A)
    B = family_kernel_basis(4)
    assert K.shape == (8, 4)
    assert (A @ K).is_zero()
    # independent oracle: rational solve + integrality, both directions
    assert all(integer_member(K.columns(), b) for b in B.columns())
    assert all(integer_member(B.columns(), k) for k in K.columns())
    assert lattice_equal(K, B)


@settings(max_examples=100, deadline=None)
@given(small_int_matrices(max_rows=3, max_cols=4, lo=-3, hi=3))
def test_kernel_is_lattice_basis(M):
    K = integer_kernel_basis(M)
    assert K.rows == M.cols
    if K.cols:
        assert (M @ K).is_zero()
    assert K.cols == M.cols - rational_rank(M.to_rows())
    box = range(-2, 3)
    for v in product(box, repeat=M.cols):
        if any(v) and not any(M.apply(v)):
            assert integer_member(K.columns(), v), v


def test_lattice_contains():
    K = IntMatrix.from_columns([(2, 0), (0, 3)])
    assert lattice_contains(K, (4, 3))
    assert not lattice_contains(K, (1, 0))
    assert lattice_contains(IntMatrix(2, 0, ()), (0, 0))


def test_gcd_minors_examples():
    assert gcd_maximal_minors(family_kernel_basis(4), 4) == 1
    assert gcd_maximal_minors(IntMatrix.zeros(3, 4), 2) == 0
    assert gcd_maximal_minors(IntMatrix.from_rows([[2, 0, 0], [0, 2, 0], [0, 0, 2]]), 3) == 8
    with pytest.raises(ValueError):
        gcd_maximal_minors(IntMatrix.identity(2), 3)


def test_rational_rank_examples():
    assert rational_rank(IntMatrix.identity(5).to_rows()) == 5
    assert rational_rank([[1, 2, 3], [4, 5, 6], [1, 2, 3]]) == 2
    assert rational_rank([]) == 0
    assert rational_rank([[Fraction(1, 2), 1], [1, 2]]) == 1


def test_rational_rank_laurent_d3():
    from hyperrank.certify import coefficient_matrix
    from hyperrank.gkz import laurent_solutions

    rows = coefficient_matrix(laurent_solutions(3))
    assert rational_rank(rows) == 4
    assert brute_rank([[int(2 * x) for x in r] for r in rows]) == 4


@settings(max_examples=150, deadline=None)
@given(small_int_matrices(max_rows=6, max_cols=6, lo=-2, hi=2))
def test_rational_rank_matches_minor_scan(M):
    assert rational_rank(M.to_rows()) == brute_rank(M.to_rows())


fractions = st.fractions(min_value=-50, max_value=50, max_denominator=30)


@settings(max_examples=100)
@given(fractions, fractions, fractions)
def test_rational_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a + (-a) == 0
    if a:
        assert a * (1 / a) == 1
    assert (a * b).denominator >= 1


def test_matrix_text_round_trip():
    M = IntMatrix.from_rows([[1, -2, 3], [0, 4, 5]])
    assert IntMatrix.parse(M.to_text()) == M
    assert M.to_text() == "2 3\n1 -2 3\n0 4 5\n"
    with pytest.raises(ValueError):
        IntMatrix.parse("2 2\n1 2\n")


def test_format_rat():
    assert format_rat(Fraction(3, 1)) == "3"
    assert format_rat(Fraction(-1, 2)) == "-1/2"
    assert format_rat(0) == "0"


def test_determinant_matches_fraction_elimination():
    rows = [[2, -1, 0], [1, 3, 4], [0, 5, -2]]
    # cofactor expansion oracle
    a = rows
    cof = (
        a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
        - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
    )
    assert determinant(rows) == cof

from fractions import Fraction
from itertools import product
from math import comb

import mpmath
import pytest

from hyperrank.gkz import (
    QUADRATIC_MATRIX,
    SERIES_SPECS,
    InvalidDimension,
    build_family,
    build_system,
    exponent_candidates,
    family_kernel_basis,
    gamma_ratio,
    laurent_solutions,
    quadratic_demo,
    series_coefficient,
    series_solution,
)
from hyperrank.linalg import IntMatrix, rational_rank
from hyperrank.polytope import NotFullRank
from hyperrank.puiseux import (
    EulerOperator,
    PuiseuxPoly,
    ToricBinomial,
    apply_euler,
    apply_toric,
    pad_variables,
    support_degrees,
)
from hyperrank.toric import Binomial, same_ideal, toric_order

F = Fraction


def brute_candidates(A, beta, pole, bound):
    n = A.cols
    out = []
    for a in product(range(-bound, bound + 1), repeat=n):
        if a[pole] < 0 and all(a[j] >= 0 for j in range(n) if j != pole) and A.apply(a) == tuple(beta):
            out.append(a)
    return sorted(out)


def test_build_family_d2():
    A, beta = build_family(2)
    assert A == IntMatrix.from_rows([[1, 1, 1, 1], [0, 1, 3, 4]])
    assert beta == (1, 2)


def test_build_family_d3_column_oracle():
    A, beta = build_family(3)
    assert A == IntMatrix.from_rows([[1, 1, 1, 1, 1, 1], [0, 0, 0, 0, 1, 1], [0, 1, 3, 4, 0, 1]])
    assert beta == (1, 0, 2)


@pytest.mark.parametrize("d", range(2, 9))
def test_build_family_columns(d):
    A, beta = build_family(d)
    e = lambda i: [int(j == i) for j in range(d)]  # noqa: E731
    add = lambda *vs: tuple(sum(x) for x in zip(*vs))  # noqa: E731
    expected = [add(e(0)), add(e(0), e(d - 1)), add(e(0), [3 * x for x in e(d - 1)]), add(e(0), [4 * x for x in e(d - 1)])]
    for k in range(3, d + 1):
        expected += [add(e(0), e(k - 2)), add(e(0), e(k - 2), e(d - 1))]
    assert A.columns() == expected
    assert A.shape == (d, 2 * d)
    assert rational_rank(A.to_rows()) == d
    assert beta == tuple([1] + [0] * (d - 2) + [2])
    assert (A @ family_kernel_basis(d)).is_zero()


def test_build_family_d4():
    A, _ = build_family(4)
    assert A.row(0) == (1,) * 8
    assert A.row(3) == (0, 1, 3, 4, 0, 1, 0, 1)


def test_invalid_dimension():
    with pytest.raises(InvalidDimension):
        build_family(1)
    with pytest.raises(InvalidDimension):
        laurent_solutions(2)


def test_build_system_examples():
    s = build_system(QUADRATIC_MATRIX, (0, -1))
    assert len(s.euler_ops) == 2 and len(s.toric_gens) == 1
    A2, b2 = build_family(2)
    s2 = build_system(A2, b2)
    assert len(s2.euler_ops) == 2
    known = [Binomial.from_vector(u) for u in ((-1, 1, 1, -1), (2, -3, 1, 0), (0, 1, -3, 2), (1, -2, 2, -1))]
    computed = [Binomial(t.u_plus, t.u_minus) for t in s2.toric_gens]
    assert same_ideal(computed, known, toric_order(A2))
    s3 = build_system(IntMatrix.identity(2), (0, 0))
    assert len(s3.euler_ops) == 2 and s3.toric_gens == ()
    for i, op in enumerate(s2.euler_ops):
        assert op.coeffs == A2.row(i) and op.shift == b2[i]
    with pytest.raises(NotFullRank):
        build_system(IntMatrix.from_rows([[1, 1], [2, 2]]), (0, 0))
    with pytest.raises(ValueError):
        build_system(A2, (1,))


def test_laurent_solutions_d3():
    sols = laurent_solutions(3)
    p5 = PuiseuxPoly(6, {(0, 1, 0, 0, -1, 1): 1, (1, 0, 0, 0, -2, 2): F(-1, 2)})
    p6 = PuiseuxPoly(6, {(0, 0, 1, 0, 1, -1): 1, (0, 0, 0, 1, 2, -2): F(-1, 2)})
    assert sols[0] == PuiseuxPoly.monomial((-1, 2, 0, 0, 0, 0))
    assert sols[1] == PuiseuxPoly.monomial((0, 0, 2, -1, 0, 0))
    assert sols[2] == p5 and sols[3] == p6


def test_laurent_pole_bookkeeping_d5():
    sols = laurent_solutions(5)
    assert len(sols) == 8
    for j, p in enumerate(sols, start=1):
        poles = {i for e in p.support() for i, a in enumerate(e) if a < 0}
        if j >= 3:
            assert poles == {j + 1}  # 0-based index of x_(j+2)


def test_exponent_candidates_single_pole_vectors():
    A, beta = build_family(3)
    assert exponent_candidates(A, beta, 4, 4) == sorted([(0, 1, 0, 0, -1, 1), (1, 0, 0, 0, -2, 2)])
    assert exponent_candidates(A, beta, 5, 4) == sorted([(0, 0, 1, 0, 1, -1), (0, 0, 0, 1, 2, -2)])


@pytest.mark.parametrize("pole", range(6))
def test_exponent_candidates_match_brute_force(pole):
    A, beta = build_family(3)
    assert exponent_candidates(A, beta, pole, 3) == brute_candidates(A, beta, pole, 3)


def test_exponent_candidates_pole_x2_not_empty():
    # A_3 (1,-1,1,0,0,0) = e1 - (e1 + e3) + (e1 + 3 e3) = (1, 0, 2)
    A, beta = build_family(3)
    found = exponent_candidates(A, beta, 1, 4)
    assert (1, -1, 1, 0, 0, 0) in found
    assert found == brute_candidates(A, beta, 1, 4)


def test_exponent_candidates_signed_matrix_path():
    A = IntMatrix.from_rows([[1, 1, 1], [1, 0, -1]])
    assert exponent_candidates(A, (1, 2), 2, 3) == brute_candidates(A, (1, 2), 2, 3)


@pytest.mark.parametrize("d", range(3, 7))
def test_exponent_candidates_span_laurent_solutions(d):
    A, beta = build_family(d)
    sols = laurent_solutions(d)
    for j, p in enumerate(sols[2:]):
        pole = 4 + j
        assert set(exponent_candidates(A, beta, pole, 6)) == {tuple(int(x) for x in e) for e in p.support()}


def test_series_start_terms():
    f1 = series_solution(1, 0)
    assert f1 == PuiseuxPoly.monomial((F(1, 2), 0, 0, F(1, 2)))
    assert series_solution(3, 0) == PuiseuxPoly.monomial((F(1, 4), 0, 1, F(-1, 4)))
    assert series_solution(2, 0) == PuiseuxPoly.monomial((F(-1, 4), 1, 0, F(1, 4)))


def test_series_region_excludes_01():
    spec = SERIES_SPECS[1]
    assert not spec.in_region(0, 1)
    f = series_solution(1, 2)
    assert f.coefficient(spec.exponent(0, 1)) == 0
    assert spec.exponent(0, 1) == (F(5, 2), -3, 1, F(1, 2))


def test_series_errors():
    with pytest.raises(ValueError):
        series_solution(4, 3)
    with pytest.raises(ValueError):
        series_solution(1, -1)


def test_gamma_ratio():
    assert gamma_ratio(F(1), 3) == F(1, 6)
    assert gamma_ratio(F(4), -2) == 6
    assert gamma_ratio(F(1), -1) == 0  # 1/Gamma(0)
    assert gamma_ratio(F(1, 2), 1) == 2


@pytest.mark.parametrize("i", [1, 2, 3])
def test_series_coefficients_match_reciprocal_gamma(i):
    spec = SERIES_SPECS[i]
    mpmath.mp.dps = 40

    def c(a, b):
        out = mpmath.mpf(1)
        for x in spec.gamma_arguments(a, b):
            out *= mpmath.rgamma(mpmath.mpf(x.numerator) / x.denominator)
        return out

    c00 = c(0, 0)
    for a in range(-3, 4):
        for b in range(-3, 4):
            if spec.in_region(a, b):
                exact = series_coefficient(spec, a, b)
                ref = c(a, b) / c00
                assert abs(mpmath.mpf(exact.numerator) / exact.denominator - ref) < mpmath.mpf(10) ** -30


@pytest.mark.parametrize("i", [1, 2, 3])
def test_series_lattice_coordinates(i):
    spec = SERIES_SPECS[i]
    for a, b in [(0, 0), (2, -1), (-1, 3)]:
        assert spec.lattice_coordinates(spec.exponent(a, b)) == (a, b)
        assert spec.height(spec.exponent(a, b)) == abs(a) + abs(b)
    assert spec.lattice_coordinates((0, 0, 0, 0)) is None


def test_pad_variables_series_euler(family_systems):
    for d in (3, 5):
        s = family_systems[d]
        f = pad_variables(series_solution(1, 6), 2 * d)
        assert support_degrees(f, s.A) == {s.beta}
        assert all(apply_euler(op, f).is_zero() for op in s.euler_ops)


def test_quadratic_demo():
    assert quadratic_demo(0) == PuiseuxPoly.monomial((0, -1, 1), -1)
    assert quadratic_demo(1) == PuiseuxPoly(3, {(0, -1, 1): -1, (1, -3, 2): -1})
    q = quadratic_demo(6)
    for t in range(7):
        assert q.coefficient((t, -1 - 2 * t, 1 + t)) == -F(comb(2 * t, t), t + 1)
    assert support_degrees(q, QUADRATIC_MATRIX) == {(0, -1)}


def test_quadratic_demo_residuals():
    N = 9
    q = quadratic_demo(N)
    for i in range(2):
        assert apply_euler(EulerOperator(QUADRATIC_MATRIX.row(i), F((0, -1)[i])), q).is_zero()
    r = apply_toric(ToricBinomial.from_vector((1, -2, 1)), q)
    assert not r.is_zero()
    # the only residual is d2^2 of the t = N term
    assert {e[0] for e in r.support()} == {N}


# invariants over the family


@pytest.mark.parametrize("d", range(3, 9))
def test_laurent_solutions_annihilated(d, family_systems):
    s = family_systems[d]
    for p in laurent_solutions(d):
        assert all(apply_euler(op, p).is_zero() for op in s.euler_ops)
        assert all(apply_toric(g, p).is_zero() for g in s.toric_gens)
        assert support_degrees(p, s.A) == {s.beta}


@pytest.mark.parametrize("i", [1, 2, 3])
@pytest.mark.parametrize("N", [4, 8, 12])
def test_truncated_series_residual_at_boundary(i, N, family_systems):
    s = family_systems[2]
    spec = SERIES_SPECS[i]
    f = series_solution(i, N)
    assert all(apply_euler(op, f).is_zero() for op in s.euler_ops)
    for g in s.toric_gens:
        r = apply_toric(g, f)
        for e, _ in r:
            hp = spec.height(tuple(x + u for x, u in zip(e, g.u_plus)))
            hm = spec.height(tuple(x + u for x, u in zip(e, g.u_minus)))
            assert max(hp, hm) > N - 3
            assert max(hp, hm) > N

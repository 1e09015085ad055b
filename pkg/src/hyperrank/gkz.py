"""The rank-jumping family ``(A_d, beta_d)``, its hypergeometric systems and explicit solutions."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import comb
from typing import Sequence

from .linalg import IntMatrix, rational_rank, to_rat_vector
from .polytope import NotFullRank
from .puiseux import EulerOperator, PuiseuxPoly, ToricBinomial, pad_variables
from .toric import toric_generating_set

__all__ = [
    "InvalidDimension",
    "HyperSystem",
    "SeriesSpec",
    "SERIES_SPECS",
    "A2_TORIC_VECTORS",
    "build_family",
    "family_kernel_basis",
    "build_system",
    "laurent_solutions",
    "laurent_solution_names",
    "exponent_candidates",
    "series_solution",
    "pad_variables",
    "quadratic_demo",
    "QUADRATIC_MATRIX",
]


class InvalidDimension(ValueError):
    pass


QUADRATIC_MATRIX = IntMatrix.from_rows([[1, 1, 1], [2, 1, 0]])

# published generators of the toric ideal of A_2, as exponent differences
A2_TORIC_VECTORS = (
    (-1, 1, 1, -1),
    (2, -3, 1, 0),
    (0, 1, -3, 2),
    (1, -2, 2, -1),
)


def build_family(d: int) -> tuple[IntMatrix, tuple[Fraction, ...]]:
    """The ``d x 2d`` matrix ``A_d`` and ``beta_d = (1, 0, ..., 0, 2)``.

    Columns: ``e1, e1+ed, e1+3ed, e1+4ed``, then for ``k = 3..d`` the pair
    ``e1+e(k-1)`` and ``e1+e(k-1)+ed``.
    """
    if d < 2:
        raise InvalidDimension("the family is defined for d >= 2")
    cols = []
    for h in (0, 1, 3, 4):
        c = [0] * d
        c[0] = 1
        c[d - 1] += h
        cols.append(c)
    for k in range(3, d + 1):
        c = [0] * d
        c[0] = 1
        c[k - 2] = 1
        cols.append(c)
        c = list(c)
        c[d - 1] += 1
        cols.append(c)
    beta = [0] * d
    beta[0] = 1
    beta[d - 1] = 2
    return IntMatrix.from_columns(cols, rows=d), to_rat_vector(beta)


def family_kernel_basis(d: int) -> IntMatrix:
    """The explicit ``2d x d`` kernel basis of ``A_d`` used in the rank-jump argument."""
    if d < 2:
        raise InvalidDimension("the family is defined for d >= 2")
    n = 2 * d
    cols = []
    for head in ((1, -2, 2, -1), (1, -1, -1, 1)):
        cols.append(list(head) + [0] * (n - 4))
    for k in range(3, d + 1):
        c = [1, -1] + [0] * (n - 2)
        c[2 * k - 2] = -1
        c[2 * k - 1] = 1
        cols.append(c)
    return IntMatrix.from_columns(cols, rows=n)


@dataclass(frozen=True)
class HyperSystem:
    A: IntMatrix
    beta: tuple[Fraction, ...]
    toric_gens: tuple[ToricBinomial, ...]
    euler_ops: tuple[EulerOperator, ...]

    @property
    def nvars(self) -> int:
        return self.A.cols

    def describe(self) -> str:
        lines = [f"A-hypergeometric system: {self.A.rows} x {self.A.cols}"]
        lines += [f"  E{i + 1}: {e}" for i, e in enumerate(self.euler_ops)]
        lines += [f"  T{i + 1}: {t}" for i, t in enumerate(self.toric_gens)]
        return "\n".join(lines)


def build_system(A: IntMatrix, beta: Sequence) -> HyperSystem:
    beta = to_rat_vector(beta)
    if len(beta) != A.rows:
        raise ValueError(f"beta must have length {A.rows}")
    if rational_rank(A.to_rows()) < A.rows:
        raise NotFullRank(f"matrix has rank below {A.rows}")
    euler = tuple(EulerOperator(A.row(i), beta[i]) for i in range(A.rows))
    toric = tuple(b.to_operator() for b in toric_generating_set(A))
    return HyperSystem(A, beta, toric, euler)


def _laurent_pair(n: int, plain: tuple[int, int], pole: int, partner: int) -> PuiseuxPoly:
    """``x_a x_partner / x_pole - 1/2 x_b x_partner^2 / x_pole^2`` (0-based indices)."""
    a, b = plain
    e1 = [0] * n
    e1[a] = 1
    e1[partner] = 1
    e1[pole] = -1
    e2 = [0] * n
    e2[b] = 1
    e2[partner] = 2
    e2[pole] = -2
    return PuiseuxPoly(n, {tuple(e1): 1, tuple(e2): Fraction(-1, 2)})


def laurent_solution_names(d: int) -> list[str]:
    return ["p1", "p4"] + [f"p{j}" for j in range(5, 2 * d + 1)]


def laurent_solutions(d: int) -> list[PuiseuxPoly]:
    """``[p1, p4, p5, p6, ..., p_2d]`` in ``2d`` variables.

    ``p1 = x2^2/x1`` and ``p4 = x3^2/x4``; for ``3 <= i <= d`` the pair
    ``p_(2i-1)``, ``p_(2i)`` has its only pole at ``x_(2i-1)``, resp. ``x_(2i)``.
    """
    if d < 3:
        raise InvalidDimension("Laurent solutions beyond p1, p4 need d >= 3")
    n = 2 * d
    out = [
        PuiseuxPoly.monomial([-1, 2] + [0] * (n - 2)),
        PuiseuxPoly.monomial([0, 0, 2, -1] + [0] * (n - 4)),
    ]
    for i in range(3, d + 1):
        odd, even = 2 * i - 2, 2 * i - 1  # x_(2i-1), x_(2i), 0-based
        out.append(_laurent_pair(n, (1, 0), odd, even))
        out.append(_laurent_pair(n, (2, 3), even, odd))
    return out


def exponent_candidates(A: IntMatrix, beta: Sequence, pole: int, bound: int) -> list[tuple[int, ...]]:
    """All integer ``a`` with ``A a = beta``, ``a[pole] < 0``, ``a[j] >= 0`` otherwise, ``|a[j]| <= bound``.

    ``pole`` is 0-based. Exhaustive over the box; for a nonnegative ``A``
    the search prunes branches whose partial degree already exceeds
    ``beta`` in some coordinate, which removes nothing from the answer.
    """
    beta = to_rat_vector(beta)
    n = A.cols
    cols = A.columns()
    others = [j for j in range(n) if j != pole]
    found = []
    if any(x < 0 for x in A.entries):
        for vals in product(range(0, bound + 1), repeat=n - 1):
            for ap in range(-bound, 0):
                a = [0] * n
                for j, v in zip(others, vals):
                    a[j] = v
                a[pole] = ap
                if A.apply(a) == beta:
                    found.append(tuple(a))
        return sorted(found)

    def dfs(k: int, remaining: list, a: list):
        if k == len(others):
            if not any(remaining):
                found.append(tuple(a))
            return
        j = others[k]
        col = cols[j]
        for v in range(0, bound + 1):
            rem = [r - v * c for r, c in zip(remaining, col)]
            if any(r < 0 for r in rem):
                break
            a[j] = v
            dfs(k + 1, rem, a)
        a[j] = 0

    for ap in range(-bound, 0):
        a = [0] * n
        a[pole] = ap
        target = [b - ap * c for b, c in zip(beta, cols[pole])]
        if any(t < 0 for t in target):
            continue
        dfs(0, target, a)
    return sorted(found)


@dataclass(frozen=True)
class SeriesSpec:
    """Data of one Puiseux series solution of the ``A_2`` system at ``beta = (1, 2)``.

    Terms sit at ``start + a*directions[0] + b*directions[1]`` for ``(a, b)``
    in the region ``start[1] + 4a >= 3b`` and ``start[2] + b >= 0``.
    """

    name: str
    start: tuple[Fraction, ...]
    directions: tuple[tuple[int, ...], tuple[int, ...]] = ((-3, 4, 0, -1), (2, -3, 1, 0))

    def in_region(self, a: int, b: int) -> bool:
        return self.start[1] + 4 * a >= 3 * b and self.start[2] + b >= 0

    def exponent(self, a: int, b: int) -> tuple[Fraction, ...]:
        v, w = self.directions
        return tuple(s + a * x + b * y for s, x, y in zip(self.start, v, w))

    def gamma_arguments(self, a: int, b: int) -> tuple[Fraction, ...]:
        # each reciprocal Gamma factor is evaluated at exponent + 1
        return tuple(e + 1 for e in self.exponent(a, b))

    def lattice_coordinates(self, exponent: Sequence) -> tuple[int, int] | None:
        """``(a, b)`` with ``exponent == start + a v + b w`` on the first four coordinates, else None."""
        e = [Fraction(x) for x in exponent[:4]]
        if any(x for x in exponent[4:]):
            return None
        b = e[2] - self.start[2]
        a = self.start[3] - e[3]
        if a.denominator != 1 or b.denominator != 1:
            return None
        a, b = int(a), int(b)
        if self.exponent(a, b) != tuple(e):
            return None
        return a, b

    def height(self, exponent: Sequence) -> int | None:
        ab = self.lattice_coordinates(exponent)
        return None if ab is None else abs(ab[0]) + abs(ab[1])


SERIES_SPECS = {
    1: SeriesSpec("f1", to_rat_vector([Fraction(1, 2), 0, 0, Fraction(1, 2)])),
    # first coordinate is -1/4: the degree of the start exponent must be (1, 2)
    2: SeriesSpec("f2", to_rat_vector([Fraction(-1, 4), 1, 0, Fraction(1, 4)])),
    3: SeriesSpec("f3", to_rat_vector([Fraction(1, 4), 0, 1, Fraction(-1, 4)])),
}


def gamma_ratio(x: Fraction, k: int) -> Fraction:
    """``Gamma(x) / Gamma(x + k)`` for ``x`` not a pole, with ``1/Gamma = 0`` at poles.

    Returns 0 when ``x + k`` is a nonpositive integer.
    """
    y = x + k
    if y.denominator == 1 and y <= 0:
        return Fraction(0)
    out = Fraction(1)
    if k > 0:
        for j in range(k):
            out /= x + j
    else:
        for j in range(1, -k + 1):
            out *= x - j
    return out


def series_coefficient(spec: SeriesSpec, a: int, b: int) -> Fraction:
    """``c_(a,b) / c_(0,0)``: a product of Gamma ratios, exact over Q."""
    base = spec.gamma_arguments(0, 0)
    here = spec.gamma_arguments(a, b)
    out = Fraction(1)
    for x, y in zip(base, here):
        # 1/Gamma(y) divided by 1/Gamma(x) = Gamma(x)/Gamma(y)
        out *= gamma_ratio(x, int(y - x))
        if not out:
            break
    return out


def series_solution(i: int, N: int) -> PuiseuxPoly:
    """Truncation of the ``i``-th series at lattice height ``|a| + |b| <= N``, normalized so the start term is 1."""
    if i not in SERIES_SPECS:
        raise ValueError("series index must be 1, 2 or 3")
    if N < 0:
        raise ValueError("truncation order must be nonnegative")
    spec = SERIES_SPECS[i]
    terms = {}
    for a in range(-N, N + 1):
        r = N - abs(a)
        for b in range(-r, r + 1):
            if spec.in_region(a, b):
                c = series_coefficient(spec, a, b)
                if c:
                    terms[spec.exponent(a, b)] = c
    return PuiseuxPoly(4, terms)


def quadratic_demo(N: int) -> PuiseuxPoly:
    """``-(x3/x2) * sum_(t<=N) 1/(t+1) binom(2t, t) (x1 x3 / x2^2)^t``, a root of ``x1 z^2 + x2 z + x3``."""
    if N < 0:
        raise ValueError("truncation order must be nonnegative")
    return PuiseuxPoly(
        3,
        {(t, -1 - 2 * t, 1 + t): Fraction(-comb(2 * t, t), t + 1) for t in range(N + 1)},
    )

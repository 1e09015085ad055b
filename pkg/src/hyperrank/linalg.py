"""Exact integer and rational linear algebra.

Everything here works on Python ints and :class:`fractions.Fraction`, so
there is no overflow and no rounding. Matrices are small (a few dozen rows
at most), which keeps the straightforward algorithms adequate.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Iterable, Sequence

Rat = Fraction
RatVector = tuple  # tuple[Fraction, ...]


def to_rat_vector(values: Iterable) -> tuple[Fraction, ...]:
    return tuple(Fraction(v) for v in values)


def format_rat(q) -> str:
    """Render a rational as ``p/q``, or ``p`` when the denominator is 1."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class IntMatrix:
    """Immutable dense integer matrix stored row-major."""

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> IntMatrix:
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged rows")
        return cls(len(rows), cols, tuple(int(x) for r in rows for x in r))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int | None = None) -> IntMatrix:
        columns = [list(c) for c in columns]
        if rows is None:
            rows = len(columns[0]) if columns else 0
        if not columns or rows == 0:
            return cls(rows, len(columns), ())
        return cls.from_rows(list(zip(*columns)), cols=len(columns))

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls(rows, cols, (0,) * (rows * cols))

    def __getitem__(self, idx: tuple[int, int]) -> int:
        i, j = idx
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(self.cols)]

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def transpose(self) -> IntMatrix:
        return IntMatrix.from_rows([self.column(j) for j in range(self.cols)], cols=self.rows)

    def is_zero(self) -> bool:
        return not any(self.entries)

    def apply(self, v: Sequence) -> tuple:
        """Matrix-vector product; works for int or Fraction vectors."""
        if len(v) != self.cols:
            raise ValueError("dimension mismatch")
        return tuple(sum(a * x for a, x in zip(self.row(i), v)) for i in range(self.rows))

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        cols = [other.column(j) for j in range(other.cols)]
        return IntMatrix.from_rows(
            [[sum(a * b for a, b in zip(self.row(i), c)) for c in cols] for i in range(self.rows)],
            cols=other.cols,
        )

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> IntMatrix:
        return IntMatrix.from_rows([[self[i, j] for j in cols] for i in rows], cols=len(cols))

    # text format: "rows cols" header, then one line of integers per row
    def to_text(self) -> str:
        lines = [f"{self.rows} {self.cols}"]
        lines += [" ".join(str(x) for x in self.row(i)) for i in range(self.rows)]
        return "\n".join(lines) + "\n"

    @classmethod
    def parse(cls, text: str) -> IntMatrix:
        lines = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
        if not lines or len(lines[0]) != 2:
            raise ValueError("matrix text must start with a 'rows cols' line")
        rows, cols = int(lines[0][0]), int(lines[0][1])
        body = lines[1:]
        if len(body) != rows:
            raise ValueError(f"expected {rows} rows, found {len(body)}")
        return cls.from_rows([[int(x) for x in ln] for ln in body], cols=cols)

    def __str__(self) -> str:
        return self.to_text().rstrip("\n")


def determinant(rows: Sequence[Sequence[int]]) -> int:
    """Integer determinant by Bareiss fraction-free elimination."""
    m = [list(r) for r in rows]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def hermite_normal_form(M: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Row-style Hermite normal form.

    Returns ``(H, U)`` with ``U`` unimodular and ``U @ M == H``. Pivots of
    ``H`` are positive and the entries above each pivot lie in
    ``[0, pivot)``; zero rows sit at the bottom.
    """
    h = M.to_rows()
    n = M.rows
    u = [[int(i == j) for j in range(n)] for i in range(n)]

    def sub(dst, src, q):
        if q:
            h[dst] = [a - q * b for a, b in zip(h[dst], h[src])]
            u[dst] = [a - q * b for a, b in zip(u[dst], u[src])]

    r = 0
    for c in range(M.cols):
        if r == n:
            break
        while True:
            nz = [i for i in range(r, n) if h[i][c] != 0]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(h[i][c]))
            h[r], h[p] = h[p], h[r]
            u[r], u[p] = u[p], u[r]
            done = True
            for i in range(r + 1, n):
                if h[i][c]:
                    sub(i, r, h[i][c] // h[r][c])
                    if h[i][c]:
                        done = False
            if done:
                break
        if h[r][c] == 0:
            continue
        if h[r][c] < 0:
            h[r] = [-a for a in h[r]]
            u[r] = [-a for a in u[r]]
        for i in range(r):
            sub(i, r, h[i][c] // h[r][c])
        r += 1
    return IntMatrix.from_rows(h, cols=M.cols), IntMatrix.from_rows(u, cols=n)


def integer_kernel_basis(M: IntMatrix) -> IntMatrix:
    """Lattice basis of ``{v in Z^cols : M v = 0}``, one basis vector per column.

    Uses the HNF of the transpose: the unimodular cofactor rows that map
    to zero rows of ``H`` span the kernel lattice.
    """
    n = M.cols
    if n == 0:
        return IntMatrix(0, 0, ())
    H, U = hermite_normal_form(M.transpose())
    kernel = [U.row(i) for i in range(n) if not any(H.row(i))]
    return IntMatrix.from_columns(kernel, rows=n) if kernel else IntMatrix(n, 0, ())


def lattice_contains(basis: IntMatrix, v: Sequence[int]) -> bool:
    """Whether ``v`` is an integer combination of the columns of ``basis``."""
    if len(v) != basis.rows:
        raise ValueError("dimension mismatch")
    if basis.cols == 0:
        return not any(v)
    H, _ = hermite_normal_form(basis.transpose())
    v = list(v)
    for i in range(H.rows):
        row = H.row(i)
        pivot = next((j for j, x in enumerate(row) if x), None)
        if pivot is None:
            break
        if v[pivot] % row[pivot]:
            return False
        q = v[pivot] // row[pivot]
        v = [a - q * b for a, b in zip(v, row)]
    return not any(v)


def lattice_equal(K1: IntMatrix, K2: IntMatrix) -> bool:
    """Whether the column lattices of ``K1`` and ``K2`` coincide."""
    if K1.rows != K2.rows:
        return False
    return all(lattice_contains(K2, c) for c in K1.columns()) and all(
        lattice_contains(K1, c) for c in K2.columns()
    )


def gcd_maximal_minors(M: IntMatrix, k: int) -> int:
    """gcd of the absolute values of all ``k x k`` minors; 0 if all vanish."""
    if k > min(M.rows, M.cols):
        raise ValueError("k exceeds matrix dimensions")
    g = 0
    rows = M.to_rows()
    for rs in combinations(range(M.rows), k):
        for cs in combinations(range(M.cols), k):
            g = gcd(g, determinant([[rows[i][j] for j in cs] for i in rs]))
            if g == 1:
                return 1
    return g


def rational_rank(rows: Sequence[Sequence]) -> int:
    """Rank over Q by Gaussian elimination on Fractions."""
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    for c in range(ncols):
        pivot = next((i for i in range(rank, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        pr = m[rank]
        for i in range(rank + 1, len(m)):
            if m[i][c] != 0:
                f = m[i][c] / pr[c]
                m[i] = [a - f * b for a, b in zip(m[i], pr)]
        rank += 1
        if rank == len(m):
            break
    return rank

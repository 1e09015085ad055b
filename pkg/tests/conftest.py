from fractions import Fraction

import pytest
from hypothesis import strategies as st

from hyperrank.linalg import IntMatrix


def small_int_matrices(max_rows=4, max_cols=5, lo=-4, hi=4):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(st.integers(lo, hi), min_size=c, max_size=c), min_size=r, max_size=r)
        )
    ).map(IntMatrix.from_rows)


def rational_solve(columns, target):
    """Solve ``sum z_j columns[j] = target`` over Q by elimination; None if inconsistent.

    Assumes the columns are linearly independent.
    """
    n = len(target)
    k = len(columns)
    aug = [[Fraction(columns[j][i]) for j in range(k)] + [Fraction(target[i])] for i in range(n)]
    row = 0
    pivots = []
    for c in range(k):
        p = next((i for i in range(row, n) if aug[i][c] != 0), None)
        if p is None:
            continue
        aug[row], aug[p] = aug[p], aug[row]
        pv = aug[row][c]
        aug[row] = [x / pv for x in aug[row]]
        for i in range(n):
            if i != row and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[row])]
        pivots.append(c)
        row += 1
    if any(aug[i][k] != 0 for i in range(row, n)):
        return None
    z = [Fraction(0)] * k
    for i, c in enumerate(pivots):
        z[c] = aug[i][k]
    return z


def integer_member(columns, target) -> bool:
    z = rational_solve(columns, target)
    return z is not None and all(x.denominator == 1 for x in z)


@pytest.fixture(scope="session")
def family_systems():
    from hyperrank.gkz import build_family, build_system

    out = {}
    for d in range(2, 9):
        A, beta = build_family(d)
        out[d] = build_system(A, beta)
    return out


_ACCEPTANCE_KEY = pytest.StashKey[list]()


@pytest.fixture
def acceptance(request):
    """Record one pass/fail line per acceptance criterion; echoed in the terminal summary."""
    lines = request.config.stash.setdefault(_ACCEPTANCE_KEY, [])

    def record(number: int, ok: bool, detail: str) -> bool:
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}"
        print(line)
        lines.append(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_ACCEPTANCE_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)

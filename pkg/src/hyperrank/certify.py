"""Certification of the rank-versus-volume gap for the family ``(A_d, beta_d)``."""

from __future__ import annotations

import json
import logging
import os
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Sequence

from .gkz import (
    SERIES_SPECS,
    HyperSystem,
    SeriesSpec,
    build_family,
    build_system,
    laurent_solution_names,
    laurent_solutions,
    series_solution,
)
from .linalg import IntMatrix, rational_rank, to_rat_vector
from .polytope import normalized_volume
from .puiseux import PuiseuxPoly, apply_euler, apply_toric, pad_variables

log = logging.getLogger(__name__)

DEFAULT_SERIES_ORDER = 12
SERIES_ORDER_ENV = "HYPERRANK_SERIES_ORDER"
# lattice-height slack for toric residuals of truncated series
BOUNDARY_SLACK = 3


class VerificationFailed(Exception):
    def __init__(self, solution: str, operator: str, residual: str):
        self.solution = solution
        self.operator = operator
        self.residual = residual
        super().__init__(f"{solution}: {operator} leaves residual {residual}")


class RankShortfall(Exception):
    pass


class VolumeMismatch(Exception):
    pass


class UnsupportedGrading(ValueError):
    pass


def default_series_order() -> int:
    value = os.environ.get(SERIES_ORDER_ENV)
    return int(value) if value else DEFAULT_SERIES_ORDER


@dataclass(frozen=True)
class Verification:
    name: str
    kind: str  # "laurent" | "series"
    status: str  # "exact" | "boundary"
    residual_terms: int = 0


def _shift(e, u):
    return tuple(a + b for a, b in zip(e, u))


def verify_solution(
    system: HyperSystem,
    p: PuiseuxPoly,
    boundary_height: int | None = None,
    lattice: SeriesSpec | None = None,
    name: str = "phi",
) -> Verification:
    """Apply every operator of ``system`` to ``p``.

    Euler operators must annihilate ``p`` exactly. Toric generators must
    too, unless ``boundary_height`` and ``lattice`` are given: then a
    residual term ``x^e`` of ``(d^u+ - d^u-) p`` is tolerated when the
    series term it came from, ``e + u+`` or ``e + u-``, sits at lattice
    height above ``boundary_height``.
    """
    if p.nvars != system.nvars:
        raise ValueError("polynomial and system have different numbers of variables")
    kind = "laurent" if lattice is None else "series"
    for i, op in enumerate(system.euler_ops):
        r = apply_euler(op, p)
        if not r.is_zero():
            e, c = r.sorted_terms()[0]
            raise VerificationFailed(name, f"Euler row {i + 1} ({op})", PuiseuxPoly.monomial(e, c).to_text())
    boundary_terms = 0
    for op in system.toric_gens:
        r = apply_toric(op, p)
        if r.is_zero():
            continue
        if boundary_height is None or lattice is None:
            e, c = r.sorted_terms()[0]
            raise VerificationFailed(name, f"toric {op}", PuiseuxPoly.monomial(e, c).to_text())
        for e, c in r:
            heights = [lattice.height(_shift(e, op.u_plus)), lattice.height(_shift(e, op.u_minus))]
            heights = [h for h in heights if h is not None]
            if not heights or max(heights) <= boundary_height:
                raise VerificationFailed(
                    name, f"toric {op}", PuiseuxPoly.monomial(e, c).to_text() + " (interior)"
                )
            boundary_terms += 1
    return Verification(name, kind, "boundary" if boundary_terms else "exact", boundary_terms)


def coefficient_matrix(sols: Sequence[PuiseuxPoly]) -> list[list[Fraction]]:
    """Rows are solutions, columns the union of their supports."""
    support = sorted(set().union(*(p.support() for p in sols))) if sols else []
    return [[p.coefficient(e) for e in support] for p in sols]


def independence_rank(sols: Sequence[PuiseuxPoly]) -> int:
    if len({p.nvars for p in sols}) > 1:
        raise ValueError("solutions live in different numbers of variables")
    return rational_rank(coefficient_matrix(sols))


def check_no_polynomial_solutions(A: IntMatrix, beta: Sequence) -> bool:
    """True iff no ``a`` in ``N^n`` has ``A a = beta``.

    The all-ones first row bounds ``sum(a)`` by ``beta[0]``, so the search
    is a finite enumeration of multisets of columns.
    """
    if any(x != 1 for x in A.row(0)):
        raise UnsupportedGrading("first row of A must be all ones")
    beta = to_rat_vector(beta)
    total = beta[0]
    if total.denominator != 1 or total < 0 or any(b.denominator != 1 for b in beta):
        return True
    cols = A.columns()
    for multiset in combinations_with_replacement(range(A.cols), int(total)):
        deg = [sum(cols[j][i] for j in multiset) for i in range(A.rows)]
        if deg == list(beta):
            return False
    return True


@dataclass
class GapCertificate:
    d: int
    volume: int
    solutions: list[Verification]
    independence_rank: int
    gap_lower_bound: int
    upper_bound_reported: int
    series_order: int
    no_polynomial_solutions: bool = field(default=True, compare=False)

    @property
    def solutions_count(self) -> int:
        return len(self.solutions)

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "volume": self.volume,
            "solutions": [{"name": s.name, "kind": s.kind, "status": s.status} for s in self.solutions],
            "independence_rank": self.independence_rank,
            "gap_lower_bound": self.gap_lower_bound,
            "upper_bound_reported": self.upper_bound_reported,
            "series_order": self.series_order,
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, data: dict) -> GapCertificate:
        return cls(
            d=data["d"],
            volume=data["volume"],
            solutions=[Verification(s["name"], s["kind"], s["status"]) for s in data["solutions"]],
            independence_rank=data["independence_rank"],
            gap_lower_bound=data["gap_lower_bound"],
            upper_bound_reported=data["upper_bound_reported"],
            series_order=data["series_order"],
        )

    @classmethod
    def from_json(cls, text: str) -> GapCertificate:
        return cls.from_dict(json.loads(text))

    def summary(self) -> str:
        return (
            f"d={self.d} vol={self.volume} rank>={self.independence_rank} "
            f"gap>={self.gap_lower_bound} (upper bound {self.upper_bound_reported})"
        )


def solution_inventory(d: int, N: int) -> list[tuple[str, PuiseuxPoly, SeriesSpec | None]]:
    """``(name, polynomial, lattice)`` for p1, p4, p5..p_2d and the three truncated series."""
    n = 2 * d
    if d == 2:
        laurent = [
            ("p1", PuiseuxPoly.monomial([-1, 2, 0, 0])),
            ("p4", PuiseuxPoly.monomial([0, 0, 2, -1])),
        ]
    else:
        laurent = list(zip(laurent_solution_names(d), laurent_solutions(d)))
    out = [(name, p, None) for name, p in laurent]
    for i, spec in SERIES_SPECS.items():
        out.append((spec.name, pad_variables(series_solution(i, N), n), spec))
    return out


def certify_gap(d: int, N: int | None = None) -> GapCertificate:
    """Verify ``2d + 1`` solutions of ``H_{A_d}(beta_d)`` and certify ``rank - vol >= d - 1``."""
    if N is None:
        N = default_series_order()
    A, beta = build_family(d)
    system = build_system(A, beta)
    volume = normalized_volume(A)
    if volume != d + 2:
        raise VolumeMismatch(f"vol(A_{d}) = {volume}, expected {d + 2}")

    inventory = solution_inventory(d, N)
    records = []
    for name, p, lattice in inventory:
        bh = None if lattice is None else N - BOUNDARY_SLACK
        records.append(verify_solution(system, p, boundary_height=bh, lattice=lattice, name=name))
        log.debug("verified %s: %s", name, records[-1].status)

    rank = independence_rank([p for _, p, _ in inventory])
    expected = 2 * d + 1
    if rank < expected:
        raise RankShortfall(f"independence rank {rank} < {expected} at series order {N}")

    return GapCertificate(
        d=d,
        volume=volume,
        solutions=records,
        independence_rank=rank,
        gap_lower_bound=rank - volume,
        upper_bound_reported=2 ** (2 * d) * volume,
        series_order=N,
        no_polynomial_solutions=check_no_polynomial_solutions(A, beta),
    )

"""Normalized volume of ``conv(columns of A, 0)`` via a placing triangulation."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Sequence

from .linalg import IntMatrix, determinant, rational_rank


class NotFullRank(ValueError):
    pass


class Degenerate(ValueError):
    pass


@dataclass(frozen=True)
class PointConfig:
    dim: int
    points: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        for p in self.points:
            if len(p) != self.dim:
                raise ValueError(f"point {p} does not have length {self.dim}")

    @classmethod
    def from_matrix(cls, A: IntMatrix, with_origin: bool = True) -> PointConfig:
        pts = [tuple(c) for c in A.columns()]
        if with_origin:
            pts = [(0,) * A.rows] + pts
        return cls(A.rows, tuple(pts))

    def affine_rank(self) -> int:
        if not self.points:
            return -1
        p0 = self.points[0]
        return rational_rank([[a - b for a, b in zip(p, p0)] for p in self.points[1:]])

    def is_full_dimensional(self) -> bool:
        return self.affine_rank() == self.dim


def _orientation(points: Sequence[Sequence[int]]) -> int:
    p0 = points[0]
    return determinant([[a - b for a, b in zip(p, p0)] for p in points[1:]])


def _sign(x: int) -> int:
    return (x > 0) - (x < 0)


def triangulate(P: PointConfig) -> list[tuple[int, ...]]:
    """Placing (beneath-beyond) triangulation, inserting points in input order.

    Returns simplices as sorted tuples of ``dim + 1`` point indices. Points
    interior to the current hull are skipped; a point beyond the hull is
    coned over every boundary facet it strictly sees.
    """
    d = P.dim
    pts = P.points
    if not P.is_full_dimensional():
        raise Degenerate("point configuration is not full-dimensional")

    # first affinely independent points, in input order
    start = [0]
    for i in range(1, len(pts)):
        trial = start + [i]
        if rational_rank([[a - b for a, b in zip(pts[j], pts[start[0]])] for j in trial[1:]]) == len(trial) - 1:
            start = trial
        if len(start) == d + 1:
            break
    simplices = [tuple(sorted(start))]
    # facet -> opposite vertex, for facets that lie on the hull boundary
    boundary: dict[tuple[int, ...], int] = {}
    for v in start:
        boundary[tuple(sorted(set(start) - {v}))] = v

    placed = set(start)
    for i in range(len(pts)):
        if i in placed:
            continue
        visible = []
        for facet, opp in boundary.items():
            fpts = [pts[j] for j in facet]
            s_opp = _sign(_orientation(fpts + [pts[opp]]))
            s_new = _sign(_orientation(fpts + [pts[i]]))
            if s_new != 0 and s_new != s_opp:
                visible.append(facet)
        placed.add(i)
        if not visible:
            continue
        for facet in visible:
            del boundary[facet]
        for facet in visible:
            simplices.append(tuple(sorted(facet + (i,))))
            for drop in facet:
                new_facet = tuple(sorted(set(facet) - {drop} | {i}))
                # a ridge shared by two visible facets yields an interior facet
                if new_facet in boundary:
                    del boundary[new_facet]
                else:
                    boundary[new_facet] = drop
    return simplices


def simplex_volume(P: PointConfig, simplex: Sequence[int]) -> int:
    """Normalized volume (``|det|`` of the edge matrix) of one simplex."""
    return abs(_orientation([P.points[j] for j in simplex]))


def configuration_volume(P: PointConfig) -> int:
    """Normalized volume of ``conv(P)``; 0 for lower-dimensional input."""
    if not P.is_full_dimensional():
        return 0
    return sum(simplex_volume(P, s) for s in triangulate(P))


def normalized_volume(A: IntMatrix) -> int:
    """``d! * vol(conv(columns of A and the origin))`` as an exact integer."""
    if rational_rank(A.to_rows()) < A.rows:
        raise NotFullRank(f"matrix has rank below {A.rows}")
    return configuration_volume(PointConfig.from_matrix(A))


def euclidean_volume(A: IntMatrix) -> Fraction:
    return Fraction(normalized_volume(A), factorial(A.rows))

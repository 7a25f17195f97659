"""Closed n-gons, the simplicity predicate, perimeter and 2-opt uncrossing.

Simplicity follows the closed-edge definition: every vertex belongs to
exactly two edges and every other point to at most one, so polygons touching
at a non-vertex point, overlapping along a line, or repeating a vertex are
all non-simple.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence, Tuple

from .metric_plane import (
    PREDICATE_TOL,
    GeometryError,
    IntersectionKind,
    Metric,
    Point,
    Segment,
    distance,
    point_from_chart,
    require_same_metric,
    segment_intersection,
)
from .convex_body import ConvexBody, contains


@dataclass(frozen=True)
class ClosedPolygon:
    """Cyclic vertex list a_0 .. a_{n-1}; edge i joins a_i to a_{i+1 mod n}.

    Simplicity is a checked predicate, not a construction invariant.
    """

    metric: Metric
    vertices: Tuple[Point, ...]

    @property
    def n(self) -> int:
        return len(self.vertices)

    def edge(self, i: int) -> Segment:
        return Segment(self.vertices[i], self.vertices[(i + 1) % self.n])


def closed_polygon(vertices: Sequence[Point]) -> ClosedPolygon:
    if len(vertices) < 3:
        raise GeometryError("polygon needs at least 3 vertices")
    metric = require_same_metric(*vertices)
    return ClosedPolygon(metric, tuple(vertices))


def perimeter(P: ClosedPolygon) -> float:
    n = P.n
    return sum(distance(P.vertices[i], P.vertices[(i + 1) % n]) for i in range(n))


class SimplicityCheck(NamedTuple):
    simple: bool
    witness: Optional[Tuple[int, int]]  # offending edge index pair, if any


def _adjacent(i: int, j: int, n: int) -> bool:
    return (j - i) % n == 1 or (i - j) % n == 1


def is_simple(P: ClosedPolygon) -> SimplicityCheck:
    """Closed-set simplicity test with the first violation as witness.

    Checks, in order: pairwise distinct vertices, adjacent edges meeting only
    at their shared vertex, and non-adjacent edges being disjoint.
    """
    n = P.n
    vs = P.vertices
    for i in range(n):
        for j in range(i + 1, n):
            if distance(vs[i], vs[j]) <= PREDICATE_TOL:
                return SimplicityCheck(False, (i, j))
    for i in range(n):
        for j in range(i + 1, n):
            res = segment_intersection(P.edge(i), P.edge(j))
            if _adjacent(i, j, n):
                if res.kind is IntersectionKind.OVERLAP:
                    return SimplicityCheck(False, (i, j))
            elif res.kind is not IntersectionKind.DISJOINT:
                return SimplicityCheck(False, (i, j))
    return SimplicityCheck(True, None)


def contained_in(P: ClosedPolygon, C: ConvexBody) -> bool:
    """True iff every vertex lies in C; edges follow by convexity of C."""
    if P.metric is not C.metric:
        raise GeometryError("metric mismatch")
    return all(contains(C, v) for v in P.vertices)


class UncrossError(GeometryError):
    def __init__(self, message: str, partial: ClosedPolygon):
        super().__init__(message)
        self.partial = partial


def _proper_cross(a, b, c, d, tol=1e-14) -> bool:
    """Strict interior crossing of chart segments [a,b] and [c,d]."""
    def orient(p, q, r):
        return (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])

    o1, o2 = orient(a, b, c), orient(a, b, d)
    o3, o4 = orient(c, d, a), orient(c, d, b)
    return ((o1 > tol and o2 < -tol) or (o1 < -tol and o2 > tol)) and \
           ((o3 > tol and o4 < -tol) or (o3 < -tol and o4 > tol))


def uncross(P: ClosedPolygon, max_passes: int = 200) -> ClosedPolygon:
    """Repair crossings by 2-opt reversals.

    Each move replaces a pair of properly crossing edges by the two
    non-crossing reconnections, reversing the intervening vertex chain.  The
    move strictly decreases chart perimeter (for H^2, Klein chord perimeter),
    so the procedure terminates.  Raises UncrossError carrying the partial
    result if max_passes is exhausted or only non-proper violations remain.
    """
    n = P.n
    vs = [v.chart for v in P.vertices]
    for i in range(n):
        for j in range(i + 1, n):
            if math.hypot(vs[i][0] - vs[j][0], vs[i][1] - vs[j][1]) <= PREDICATE_TOL:
                raise GeometryError("uncross requires pairwise distinct vertices")

    def find_cross():
        for i in range(n):
            a, b = vs[i], vs[(i + 1) % n]
            for j in range(i + 1, n):
                if _adjacent(i, j, n):
                    continue
                c, d = vs[j], vs[(j + 1) % n]
                if _proper_cross(a, b, c, d):
                    return i, j
        return None

    passes = 0
    while passes < max_passes:
        hit = find_cross()
        if hit is None:
            break
        i, j = hit
        vs[i + 1:j + 1] = reversed(vs[i + 1:j + 1])
        passes += 1

    out = ClosedPolygon(P.metric, tuple(
        point_from_chart(P.metric, c) for c in vs))
    check = is_simple(out)
    if not check.simple:
        raise UncrossError(
            "uncross failed after %d passes (edges %s)" % (passes, check.witness),
            out)
    return out

"""The supremal perimeter bound: maximize (n-2)*alpha + beta + gamma over
triangles inscribed in a convex body, with alpha >= beta >= gamma the sorted
side lengths.

The objective is continuous but only piecewise smooth (the argmax side can
switch), so refinement is derivative-free: a coarse grid over boundary
parameters followed by cyclic golden-section sweeps per coordinate.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Dict, Sequence, Tuple

import numpy as np

from .metric_plane import (
    INCIDENCE_TOL,
    GeometryError,
    Metric,
    Point,
    distance,
    geodesic_point,
    poincare_point,
    euclidean_point,
    _perp_tangent,
    _tangent_toward,
)
from .convex_body import (
    BoundaryPoint,
    ConvexBody,
    boundary_point,
    boundary_point_of,
    contains,
    disk_body,
    interior_point,
    on_boundary,
    ray_exit,
)

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def triangle_score(n: int, sides: Sequence[float]) -> float:
    """(n-2)*alpha + beta + gamma for the sides sorted decreasingly."""
    if n < 3 or n % 2 == 0:
        raise GeometryError("n must be odd and >= 3")
    a, b, c = sorted(sides, reverse=True)
    return (n - 2) * a + b + c


@dataclass(frozen=True)
class InscribedTriangle:
    """Three boundary points of a convex body with sorted side lengths."""

    points: Tuple[BoundaryPoint, BoundaryPoint, BoundaryPoint]

    @property
    def body(self) -> ConvexBody:
        return self.points[0].body

    @property
    def vertex_points(self) -> Tuple[Point, Point, Point]:
        return tuple(bp.point for bp in self.points)  # type: ignore[return-value]

    @property
    def sides(self) -> Tuple[float, float, float]:
        p = self.vertex_points
        raw = (distance(p[0], p[1]), distance(p[1], p[2]), distance(p[0], p[2]))
        a, b, c = sorted(raw, reverse=True)
        return (a, b, c)


def inscribed_triangle(points: Tuple[BoundaryPoint, BoundaryPoint, BoundaryPoint]) -> InscribedTriangle:
    tri = InscribedTriangle(points)
    for bp in points:
        if not on_boundary(bp.body, bp.point, INCIDENCE_TOL):
            raise GeometryError("triangle vertex not on the body boundary")
    a, b, c = tri.sides
    if a > b + c + 1e-12:
        raise GeometryError("side lengths violate the triangle inequality")
    return tri


@dataclass(frozen=True)
class BoundResult:
    triangle: InscribedTriangle
    value: float
    diagnostics: Dict[str, float]


def _pairwise_distances(C: ConvexBody, ts: np.ndarray) -> np.ndarray:
    pts = [boundary_point(C, float(t)) for t in ts]
    if C.metric is Metric.EUCLIDEAN:
        xy = np.array([p.data for p in pts])
        diff = xy[:, None, :] - xy[None, :, :]
        return np.sqrt((diff ** 2).sum(-1))
    h = np.array([p.data for p in pts])
    g = h[:, 0:1] @ h[:, 0:1].T - h[:, 1:2] @ h[:, 1:2].T - h[:, 2:3] @ h[:, 2:3].T
    return np.arccosh(np.clip(g, 1.0, None))


def _score_from_params(C: ConvexBody, n: int, ts: Sequence[float]) -> float:
    p = [boundary_point(C, t % 1.0) for t in ts]
    return triangle_score(n, (distance(p[0], p[1]),
                              distance(p[1], p[2]),
                              distance(p[0], p[2])))


def _golden_max(f, lo: float, hi: float, tol: float = 1e-11) -> Tuple[float, float]:
    """Golden-section maximization on [lo, hi]."""
    a, b = lo, hi
    x1 = b - _GOLDEN * (b - a)
    x2 = a + _GOLDEN * (b - a)
    f1, f2 = f(x1), f(x2)
    while b - a > tol:
        if f1 < f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + _GOLDEN * (b - a)
            f2 = f(x2)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - _GOLDEN * (b - a)
            f1 = f(x1)
    xm = 0.5 * (a + b)
    return xm, f(xm)


def _cyclic_refine(f_axis, params, bracket: float, refine_iters: int,
                   move_tol: float = 1e-10):
    """Cyclic per-coordinate golden-section ascent until movement stalls."""
    params = list(params)
    sweeps = 0
    movement = math.inf
    for sweeps in range(1, refine_iters + 1):
        movement = 0.0
        for axis in range(len(params)):
            x0 = params[axis]
            x, _ = _golden_max(lambda x: f_axis(axis, x, params),
                               x0 - bracket, x0 + bracket)
            movement += abs(x - x0)
            params[axis] = x
        if movement < move_tol:
            break
    return params, sweeps, movement


def optimize_bound(C: ConvexBody, n: int, grid: int = 96,
                   refine_iters: int = 60) -> BoundResult:
    """Best inscribed triangle for the (n-2, 1, 1) weighted perimeter.

    Coarse search over ordered boundary-parameter triples t1 < t2 < t3,
    keeping the lexicographically smallest argmax, then cyclic golden-section
    refinement per parameter until total movement drops below 1e-10.  The
    returned value is a certified lower bound on B(C, n) and, at the reported
    resolution, an approximation of it.
    """
    if n < 3 or n % 2 == 0:
        raise GeometryError("n must be odd and >= 3")
    if grid < 24:
        raise GeometryError("grid must be at least 24")
    ts = np.arange(grid) / grid
    D = _pairwise_distances(C, ts)
    idx = np.fromiter(itertools.chain.from_iterable(
        itertools.combinations(range(grid), 3)), dtype=np.int64).reshape(-1, 3)
    s1 = D[idx[:, 0], idx[:, 1]]
    s2 = D[idx[:, 1], idx[:, 2]]
    s3 = D[idx[:, 0], idx[:, 2]]
    sides = np.sort(np.stack([s1, s2, s3]), axis=0)
    scores = (n - 2) * sides[2] + sides[1] + sides[0]
    best = int(np.argmax(scores))  # first occurrence = lexicographically least
    params = [float(ts[k]) for k in idx[best]]

    def f_axis(axis, x, cur):
        trial = list(cur)
        trial[axis] = x
        return _score_from_params(C, n, trial)

    params, sweeps, movement = _cyclic_refine(
        f_axis, params, bracket=1.0 / grid, refine_iters=refine_iters)
    bps = tuple(BoundaryPoint(C, t % 1.0, boundary_point(C, t)) for t in params)
    tri = inscribed_triangle(bps)  # type: ignore[arg-type]
    value = triangle_score(n, tri.sides)
    return BoundResult(tri, value, {
        "grid": float(grid),
        "refine_sweeps": float(sweeps),
        "param_movement": movement,
    })


def _chord(metric: Metric, r: float, theta):
    """Chord length of a circle of intrinsic radius r at central angle theta."""
    if metric is Metric.EUCLIDEAN:
        return 2.0 * r * np.sin(np.asarray(theta) / 2.0)
    val = np.cosh(r) ** 2 - np.sinh(r) ** 2 * np.cos(np.asarray(theta))
    return np.arccosh(np.clip(val, 1.0, None))


def disk_bound_1d(metric: Metric, r: float, n: int, grid: int = 512,
                  refine_iters: int = 60) -> BoundResult:
    """Disk specialization via central angles (t1, t2, t3), sum 2*pi.

    By rotation symmetry the triangle is determined by two angles; the third
    is 2*pi minus their sum.  Must agree with optimize_bound on the same disk
    to 1e-8 relative.
    """
    if n < 3 or n % 2 == 0:
        raise GeometryError("n must be odd and >= 3")
    if not r > 0.0:
        raise GeometryError("radius must be positive")
    two_pi = 2.0 * math.pi
    th = two_pi * np.arange(1, grid) / grid
    T1, T2 = np.meshgrid(th, th, indexing="ij")
    T3 = two_pi - T1 - T2
    ok = T3 > 0.0
    c1 = _chord(metric, r, T1)
    c2 = _chord(metric, r, T2)
    c3 = _chord(metric, r, np.where(ok, T3, 1.0))
    sides = np.sort(np.stack([c1, c2, c3]), axis=0)
    scores = (n - 2) * sides[2] + sides[1] + sides[0]
    scores[~ok] = -np.inf
    flat = int(np.argmax(scores))
    i, j = divmod(flat, grid - 1)
    params = [float(th[i]), float(th[j])]

    def score2(t1: float, t2: float) -> float:
        t3 = two_pi - t1 - t2
        if t1 <= 0.0 or t2 <= 0.0 or t3 <= 0.0:
            return -math.inf
        return triangle_score(n, (float(_chord(metric, r, t1)),
                                  float(_chord(metric, r, t2)),
                                  float(_chord(metric, r, t3))))

    def f_axis(axis, x, cur):
        trial = list(cur)
        trial[axis] = x
        return score2(trial[0], trial[1])

    params, sweeps, movement = _cyclic_refine(
        f_axis, params, bracket=two_pi / grid, refine_iters=refine_iters)
    t1, t2 = params
    center = euclidean_point(0.0, 0.0) if metric is Metric.EUCLIDEAN \
        else poincare_point(0.0, 0.0)
    C = disk_body(center, r)
    ts = (0.0, t1 / two_pi, (t1 + t2) / two_pi)
    bps = tuple(BoundaryPoint(C, t % 1.0, boundary_point(C, t)) for t in ts)
    tri = inscribed_triangle(bps)  # type: ignore[arg-type]
    value = triangle_score(n, tri.sides)
    return BoundResult(tri, value, {
        "grid": float(grid),
        "refine_sweeps": float(sweeps),
        "param_movement": movement,
    })


def bound_for(C: ConvexBody, n: int, grid: int = 0) -> BoundResult:
    """Bound for any supported body: the 1D disk route for disks (realized on
    C's own boundary parametrization), the generic optimizer otherwise."""
    if C.is_disk:
        br = disk_bound_1d(C.metric, C.shape.radius, n,
                           grid=grid or 512)
        ts = [bp.t for bp in br.triangle.points]
        bps = tuple(BoundaryPoint(C, t, boundary_point(C, t)) for t in ts)
        tri = inscribed_triangle(bps)  # type: ignore[arg-type]
        return BoundResult(tri, triangle_score(n, tri.sides), br.diagnostics)
    return optimize_bound(C, n, grid=grid or 96)


def inscribe_push(C: ConvexBody, points: Sequence[Point]) -> InscribedTriangle:
    """Move the vertices of a contained triangle to bd C without shrinking
    any side.

    Each interior vertex travels along the outward bisector direction at the
    vertex (the direction making a non-acute angle with both sides), or the
    perpendicular escape direction when the vertex lies between its
    neighbors; the travel ends where the ray leaves the body.
    """
    if len(points) != 3:
        raise GeometryError("inscribe_push expects exactly three points")
    for p in points:
        if not contains(C, p):
            raise GeometryError("point outside body")
    cur = list(points)
    before = [distance(cur[0], cur[1]), distance(cur[1], cur[2]),
              distance(cur[0], cur[2])]
    for i in range(3):
        v = cur[i]
        if on_boundary(C, v, INCIDENCE_TOL):
            continue
        u, w = cur[(i + 1) % 3], cur[(i + 2) % 3]
        tangents = []
        for nb in (u, w):
            # coincident neighbors contribute no direction
            try:
                tangents.append(_tangent_toward(v, nb))
            except GeometryError:
                pass

        def tdot(a, b):
            if C.metric is Metric.EUCLIDEAN:
                return a[1] * b[1] + a[2] * b[2]
            return -(a[0] * b[0] - a[1] * b[1] - a[2] * b[2])

        if not tangents:
            d = (0.0, 1.0, 0.0)
        elif len(tangents) == 1:
            d = tuple(-x for x in tangents[0])
        else:
            raw = tuple(-(a + b) for a, b in zip(*tangents))
            norm2 = tdot(raw, raw)
            # Near-antipodal tangents cancel and the normalized sum picks up
            # enough rounding to dip below 90 degrees from a side.  The exact
            # perpendicular to one tangent, signed away from the other, keeps
            # both sides non-decreasing (zero derivative against one, obtuse
            # against the other).
            if norm2 >= 0.25:
                scale = 1.0 / math.sqrt(norm2)
                d = tuple(x * scale for x in raw)
            else:
                d = _perp_tangent(v, tangents[0])
                side = tdot(d, tangents[1])
                if abs(side) > 1e-9:
                    if side > 0.0:
                        d = tuple(-x for x in d)
                else:
                    # exactly collinear: both perpendiculars are valid, so
                    # break the tie away from the interior reference point,
                    # which is equivariant under rigid motions
                    try:
                        inward = _tangent_toward(v, interior_point(C))
                        if tdot(d, inward) > 0.0:
                            d = tuple(-x for x in d)
                    except GeometryError:
                        pass
        anchor = geodesic_point(v, d, 1e-2)
        cur[i] = ray_exit(C, v, anchor)
    after = [distance(cur[0], cur[1]), distance(cur[1], cur[2]),
             distance(cur[0], cur[2])]
    for b, a in zip(before, after):
        if a < b - 1e-10:
            raise GeometryError("inscribe_push shrank a side")
    bps = tuple(boundary_point_of(C, p) for p in cur)
    return inscribed_triangle(bps)  # type: ignore[arg-type]

"""Plane convex bodies: disks and convex polygons, in either metric.

A hyperbolic "convex polygon" is geodesically convex; convexity is checked in
the Klein chart, where geodesics are straight chords, so the Euclidean test
applies verbatim.  Disk boundaries are parametrized by direction angle at the
center, polygon boundaries by arc length from vertex 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Tuple, Union

from .metric_plane import (
    INCIDENCE_TOL,
    PREDICATE_TOL,
    GeometryError,
    Metric,
    Point,
    distance,
    euclidean_point,
    geodesic_point,
    hyperbolic_translation,
    mat_vec,
    point_from_chart,
    point_toward,
    require_same_metric,
    _renormalize,
    _tangent_toward,
)


class InvalidBodyError(GeometryError):
    pass


@dataclass(frozen=True)
class Disk:
    center: Point
    radius: float  # intrinsic metric radius


@dataclass(frozen=True)
class ConvexPolygonShape:
    vertices: Tuple[Point, ...]


Shape = Union[Disk, ConvexPolygonShape]


@dataclass(frozen=True)
class ConvexBody:
    metric: Metric
    shape: Shape

    @property
    def is_disk(self) -> bool:
        return isinstance(self.shape, Disk)


def disk_body(center: Point, radius: float) -> ConvexBody:
    if not radius > 0.0 or not math.isfinite(radius):
        raise InvalidBodyError("disk radius must be positive and finite")
    return ConvexBody(center.metric, Disk(center, float(radius)))


def polygon_body(vertices: Sequence[Point]) -> ConvexBody:
    if len(vertices) < 3:
        raise InvalidBodyError("convex polygon needs at least 3 vertices")
    metric = require_same_metric(*vertices)
    ch = [v.chart for v in vertices]
    k = len(ch)
    for i in range(k):
        ax, ay = ch[i]
        bx, by = ch[(i + 1) % k]
        cx, cy = ch[(i + 2) % k]
        cross = (bx - ax) * (cy - by) - (by - ay) * (cx - bx)
        if cross <= PREDICATE_TOL:
            raise InvalidBodyError(
                "vertices must be in strictly convex counterclockwise position")
    return ConvexBody(metric, ConvexPolygonShape(tuple(vertices)))


def contains(C: ConvexBody, p: Point) -> bool:
    """Closed containment: boundary points count as contained."""
    require_same_metric(C.shape.center if C.is_disk else C.shape.vertices[0], p)
    if C.is_disk:
        return distance(C.shape.center, p) <= C.shape.radius + PREDICATE_TOL
    ch = [v.chart for v in C.shape.vertices]
    x, y = p.chart
    k = len(ch)
    for i in range(k):
        ax, ay = ch[i]
        bx, by = ch[(i + 1) % k]
        if (bx - ax) * (y - ay) - (by - ay) * (x - ax) < -PREDICATE_TOL:
            return False
    return True


def _polygon_edge_lengths(C: ConvexBody):
    vs = C.shape.vertices
    k = len(vs)
    return [distance(vs[i], vs[(i + 1) % k]) for i in range(k)]


def perimeter_of_body(C: ConvexBody) -> float:
    if C.is_disk:
        raise InvalidBodyError("disk boundary length is not needed; use radius")
    return sum(_polygon_edge_lengths(C))


def boundary_point(C: ConvexBody, t: float) -> Point:
    """Point of bd C at parameter t in [0, 1).

    Disk: direction angle 2*pi*t at the center, at intrinsic radius r.
    Polygon: arc-length parametrization starting at vertex 0.
    """
    t = t % 1.0
    if C.is_disk:
        c, r = C.shape.center, C.shape.radius
        phi = 2.0 * math.pi * t
        if C.metric is Metric.EUCLIDEAN:
            return euclidean_point(c.data[0] + r * math.cos(phi),
                                   c.data[1] + r * math.sin(phi))
        base = (math.cosh(r), math.sinh(r) * math.cos(phi),
                math.sinh(r) * math.sin(phi))
        return Point(Metric.HYPERBOLIC,
                     _renormalize(mat_vec(hyperbolic_translation(c), base)))
    vs = C.shape.vertices
    lens = _polygon_edge_lengths(C)
    total = sum(lens)
    s = t * total
    for i, li in enumerate(lens):
        if s <= li or i == len(lens) - 1:
            if li <= PREDICATE_TOL:
                return vs[i]
            return point_toward(vs[i], vs[(i + 1) % len(vs)], min(s, li))
        s -= li
    return vs[0]


def boundary_parameter(C: ConvexBody, p: Point) -> float:
    """Best-effort inverse of boundary_point for points on (or near) bd C."""
    if C.is_disk:
        c = C.shape.center
        if C.metric is Metric.EUCLIDEAN:
            phi = math.atan2(p.data[1] - c.data[1], p.data[0] - c.data[0])
        else:
            from .metric_plane import apply_isometry, lorentz_inverse
            q = apply_isometry(lorentz_inverse(hyperbolic_translation(c)), p)
            phi = math.atan2(q.data[2], q.data[1])
        return (phi / (2.0 * math.pi)) % 1.0
    vs = C.shape.vertices
    k = len(vs)
    lens = _polygon_edge_lengths(C)
    total = sum(lens)
    best = (math.inf, 0.0)
    xc = p.chart
    acc = 0.0
    for i in range(k):
        a = vs[i].chart
        b = vs[(i + 1) % k].chart
        dx, dy = b[0] - a[0], b[1] - a[1]
        l2 = dx * dx + dy * dy
        u = 0.0 if l2 <= PREDICATE_TOL else max(
            0.0, min(1.0, ((xc[0] - a[0]) * dx + (xc[1] - a[1]) * dy) / l2))
        px, py = a[0] + u * dx, a[1] + u * dy
        res = math.hypot(xc[0] - px, xc[1] - py)
        if res < best[0]:
            proj = point_from_chart(C.metric, (px, py))
            best = (res, (acc + distance(vs[i], proj)) / total)
        acc += lens[i]
    return best[1] % 1.0


def on_boundary(C: ConvexBody, p: Point, tol: float = INCIDENCE_TOL) -> bool:
    if C.is_disk:
        return abs(distance(C.shape.center, p) - C.shape.radius) <= tol
    if not contains(C, p):
        return False
    ch = [v.chart for v in C.shape.vertices]
    x, y = p.chart
    k = len(ch)
    for i in range(k):
        ax, ay = ch[i]
        bx, by = ch[(i + 1) % k]
        le = math.hypot(bx - ax, by - ay)
        if le <= PREDICATE_TOL:
            continue
        if abs((bx - ax) * (y - ay) - (by - ay) * (x - ax)) / le <= tol:
            return True
    return False


def ray_exit(C: ConvexBody, origin: Point, anchor: Point) -> Point:
    """Boundary point where the ray from ``origin`` through ``anchor`` leaves C.

    Found by doubling then bisecting the geodesic arc-length parameter to
    1e-12.  If the origin is already on bd C and the ray exits immediately,
    the origin itself is returned.
    """
    require_same_metric(origin, anchor)
    if not contains(C, origin):
        raise GeometryError("origin outside body")
    tangent = _tangent_toward(origin, anchor)
    hi = 1.0
    steps = 0
    while contains(C, geodesic_point(origin, tangent, hi)):
        hi *= 2.0
        steps += 1
        if steps > 200:
            raise GeometryError("ray never exits body")
    lo = 0.0
    while hi - lo > 1e-12:
        mid = 0.5 * (lo + hi)
        if contains(C, geodesic_point(origin, tangent, mid)):
            lo = mid
        else:
            hi = mid
    return geodesic_point(origin, tangent, lo)


def diameter(C: ConvexBody) -> float:
    """Disk: 2r.  Polygon: max pairwise vertex distance (the max of a convex
    function over a convex polygon is attained at vertices)."""
    if C.is_disk:
        return 2.0 * C.shape.radius
    vs = C.shape.vertices
    best = 0.0
    for i in range(len(vs)):
        for j in range(i + 1, len(vs)):
            best = max(best, distance(vs[i], vs[j]))
    return best


def diameter_pair(C: ConvexBody) -> Tuple[Point, Point]:
    """A pair of points realizing the diameter (first found on ties)."""
    if C.is_disk:
        return boundary_point(C, 0.0), boundary_point(C, 0.5)
    vs = C.shape.vertices
    best = (-1.0, 0, 1)
    for i in range(len(vs)):
        for j in range(i + 1, len(vs)):
            d = distance(vs[i], vs[j])
            if d > best[0]:
                best = (d, i, j)
    return vs[best[1]], vs[best[2]]


def interior_point(C: ConvexBody) -> Point:
    """A deterministic interior reference point: disk center, or the chart
    centroid of the polygon vertices."""
    if C.is_disk:
        return C.shape.center
    ch = [v.chart for v in C.shape.vertices]
    cx = sum(c[0] for c in ch) / len(ch)
    cy = sum(c[1] for c in ch) / len(ch)
    return point_from_chart(C.metric, (cx, cy))


def chart_bbox(C: ConvexBody, pad: float = 0.0):
    """Axis-aligned chart bounding box (for rejection sampling)."""
    if C.is_disk and C.metric is Metric.EUCLIDEAN:
        cx, cy = C.shape.center.data
        r = C.shape.radius
        return (cx - r - pad, cy - r - pad, cx + r + pad, cy + r + pad)
    if C.is_disk:
        pts = [boundary_point(C, i / 64.0).chart for i in range(64)]
    else:
        pts = [v.chart for v in C.shape.vertices]
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    return (min(xs) - pad, min(ys) - pad, max(xs) + pad, max(ys) + pad)


@dataclass(frozen=True)
class BoundaryPoint:
    """A point of bd C together with its boundary parameter."""

    body: ConvexBody
    t: float
    point: Point


def boundary_point_at(C: ConvexBody, t: float) -> BoundaryPoint:
    return BoundaryPoint(C, t % 1.0, boundary_point(C, t))


def boundary_point_of(C: ConvexBody, p: Point) -> BoundaryPoint:
    return BoundaryPoint(C, boundary_parameter(C, p), p)

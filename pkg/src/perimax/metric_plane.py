"""Uniform geometric primitives for the Euclidean and hyperbolic planes.

Every object carries a metric tag and mixing metrics in one operation is an
error.  Euclidean points are plain Cartesian pairs.  Hyperbolic points are
stored internally on the hyperboloid x0^2 - x1^2 - x2^2 = 1, x0 >= 1, where
distances are numerically stable (acosh of the Minkowski pairing); the
Poincare disk is the external interchange format, and the Klein disk is used
for the linear predicates (segment intersection, convex hulls), because Klein
geodesics are straight chords and the Euclidean routines apply verbatim.

Tolerances come in three tiers, shared by the whole package:

* ``PREDICATE_TOL``  -- geometric predicates and intersection parameters,
* ``INCIDENCE_TOL``  -- incidence of constructed points on curves,
* ``PROPERTY_TOL``   -- slack allowed in randomized property checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence, Tuple

PREDICATE_TOL = 1e-12
INCIDENCE_TOL = 1e-10
PROPERTY_TOL = 1e-9

Vec3 = Tuple[float, float, float]
Mat3 = Tuple[Vec3, Vec3, Vec3]


class GeometryError(ValueError):
    """Base class for geometric failures."""


class MetricMismatchError(GeometryError):
    """Operands live in different metrics."""


class DegenerateSegmentError(GeometryError):
    """A segment of zero length was passed where a direction is needed."""


class InfeasibleHypercycleError(GeometryError):
    """No hypercycle satisfies the requested incidences."""


class Metric(Enum):
    EUCLIDEAN = "euclidean"
    HYPERBOLIC = "hyperbolic"


# ---------------------------------------------------------------------------
# Minkowski helpers (signature +,-,-) on plain float triples.
# ---------------------------------------------------------------------------

def _mdot(x: Vec3, y: Vec3) -> float:
    return x[0] * y[0] - x[1] * y[1] - x[2] * y[2]


def _ecross(a: Vec3, b: Vec3) -> Vec3:
    return (a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0])


def _jvec(x: Vec3) -> Vec3:
    return (x[0], -x[1], -x[2])


def _vadd(x: Vec3, y: Vec3) -> Vec3:
    return (x[0] + y[0], x[1] + y[1], x[2] + y[2])


def _vscale(x: Vec3, s: float) -> Vec3:
    return (x[0] * s, x[1] * s, x[2] * s)


def _renormalize(x: Vec3) -> Vec3:
    """Project back onto the hyperboloid sheet x0 >= 1 after arithmetic."""
    q = _mdot(x, x)
    if q <= 0.0:
        raise GeometryError("point left the hyperboloid sheet")
    s = 1.0 / math.sqrt(q)
    if x[0] < 0.0:
        s = -s
    return (x[0] * s, x[1] * s, x[2] * s)


def _unit_spacelike(x: Vec3) -> Vec3:
    q = -_mdot(x, x)
    if q <= 0.0:
        raise GeometryError("vector is not spacelike")
    s = 1.0 / math.sqrt(q)
    return (x[0] * s, x[1] * s, x[2] * s)


def _acosh_clamped(t: float) -> float:
    # Rounding can push the pairing to 1 - 1e-16; clamp before acosh.
    return math.acosh(t) if t > 1.0 else 0.0


def _clamp_cos(c: float) -> float:
    return 1.0 if c > 1.0 else (-1.0 if c < -1.0 else c)


# ---------------------------------------------------------------------------
# Points
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Point:
    """A location in E^2 or H^2.

    ``data`` is Cartesian ``(x, y)`` for Euclidean points and a normalized
    hyperboloid triple ``(x0, x1, x2)`` for hyperbolic points.  Use
    :func:`euclidean_point`, :func:`poincare_point` or :func:`klein_point`
    to construct one; ``coords`` returns the interchange coordinates
    (Cartesian, respectively Poincare).
    """

    metric: Metric
    data: tuple

    @property
    def coords(self) -> Tuple[float, float]:
        if self.metric is Metric.EUCLIDEAN:
            return (self.data[0], self.data[1])
        x0, x1, x2 = self.data
        return (x1 / (1.0 + x0), x2 / (1.0 + x0))

    @property
    def chart(self) -> Tuple[float, float]:
        """Coordinates in the linear chart: Cartesian for E^2, Klein for H^2."""
        if self.metric is Metric.EUCLIDEAN:
            return (self.data[0], self.data[1])
        x0, x1, x2 = self.data
        return (x1 / x0, x2 / x0)

    @property
    def hyperboloid(self) -> Vec3:
        if self.metric is not Metric.HYPERBOLIC:
            raise GeometryError("hyperboloid coordinates exist only in H^2")
        return self.data  # type: ignore[return-value]


def euclidean_point(x: float, y: float) -> Point:
    return Point(Metric.EUCLIDEAN, (float(x), float(y)))


def poincare_point(u: float, v: float) -> Point:
    """Hyperbolic point from Poincare-disk coordinates, u^2 + v^2 < 1."""
    s = u * u + v * v
    if not s < 1.0:
        raise GeometryError("Poincare coordinates must satisfy u^2 + v^2 < 1")
    d = 1.0 - s
    return Point(Metric.HYPERBOLIC, ((1.0 + s) / d, 2.0 * u / d, 2.0 * v / d))


def klein_point(u: float, v: float) -> Point:
    s = u * u + v * v
    if not s < 1.0:
        raise GeometryError("Klein coordinates must satisfy u^2 + v^2 < 1")
    x0 = 1.0 / math.sqrt(1.0 - s)
    return Point(Metric.HYPERBOLIC, (x0, u * x0, v * x0))


def hyperboloid_point(x0: float, x1: float, x2: float) -> Point:
    return Point(Metric.HYPERBOLIC, _renormalize((x0, x1, x2)))


def point_from_chart(metric: Metric, xy: Tuple[float, float]) -> Point:
    if metric is Metric.EUCLIDEAN:
        return euclidean_point(xy[0], xy[1])
    return klein_point(xy[0], xy[1])


_H_ORIGIN: Vec3 = (1.0, 0.0, 0.0)


def require_same_metric(*objs) -> Metric:
    metric = objs[0].metric
    for o in objs[1:]:
        if o.metric is not metric:
            raise MetricMismatchError("metric mismatch")
    return metric


# ---------------------------------------------------------------------------
# Distance, geodesics, tangents
# ---------------------------------------------------------------------------

def distance(p: Point, q: Point) -> float:
    """Metric distance; symmetric and satisfies the triangle inequality.

    The hyperbolic branch evaluates acosh of the Minkowski pairing through
    the difference vector, 2*asinh(|x - y|_M / 2), which is cancellation-free
    for nearby points (acosh near 1 would lose half the digits).
    """
    metric = require_same_metric(p, q)
    if metric is Metric.EUCLIDEAN:
        return math.hypot(p.data[0] - q.data[0], p.data[1] - q.data[1])
    d0 = p.data[0] - q.data[0]
    d1 = p.data[1] - q.data[1]
    d2 = p.data[2] - q.data[2]
    s = d1 * d1 + d2 * d2 - d0 * d0
    if s <= 0.0:
        return 0.0
    return 2.0 * math.asinh(0.5 * math.sqrt(s))


def _tangent_toward(v: Point, target: Point) -> Vec3:
    """Unit tangent vector at ``v`` pointing toward ``target``.

    Euclidean tangents are embedded as (0, dx, dy) so both metrics share a
    representation.  Raises on coincident points.
    """
    metric = require_same_metric(v, target)
    if metric is Metric.EUCLIDEAN:
        dx = target.data[0] - v.data[0]
        dy = target.data[1] - v.data[1]
        n = math.hypot(dx, dy)
        if n <= PREDICATE_TOL:
            raise GeometryError("coincident points")
        return (0.0, dx / n, dy / n)
    c = _mdot(target.data, v.data)
    raw = _vadd(target.data, _vscale(v.data, -c))
    try:
        return _unit_spacelike(raw)
    except GeometryError:
        raise GeometryError("coincident points") from None


def _perp_tangent(v: Point, tangent: Vec3) -> Vec3:
    """A unit tangent at ``v`` orthogonal to ``tangent`` (either sign)."""
    if v.metric is Metric.EUCLIDEAN:
        return (0.0, -tangent[2], tangent[1])
    return _unit_spacelike(_ecross(_jvec(v.data), _jvec(tangent)))


def geodesic_point(origin: Point, tangent: Vec3, s: float) -> Point:
    """Point at arc length ``s`` along the unit-speed geodesic from ``origin``."""
    if origin.metric is Metric.EUCLIDEAN:
        return euclidean_point(origin.data[0] + s * tangent[1],
                               origin.data[1] + s * tangent[2])
    c, sh = math.cosh(s), math.sinh(s)
    return Point(Metric.HYPERBOLIC, _renormalize(
        _vadd(_vscale(origin.data, c), _vscale(tangent, sh))))


def point_toward(origin: Point, target: Point, s: float) -> Point:
    return geodesic_point(origin, _tangent_toward(origin, target), s)


@dataclass(frozen=True)
class Geodesic:
    """The full line L(x, y) through two distinct anchor points."""

    metric: Metric
    a: Point
    b: Point


def geodesic_through(a: Point, b: Point) -> Geodesic:
    metric = require_same_metric(a, b)
    if distance(a, b) <= PREDICATE_TOL:
        raise GeometryError("geodesic anchors must be distinct")
    return Geodesic(metric, a, b)


def _line_normal(L: Geodesic) -> Vec3:
    """Unit spacelike normal of the hyperboloid plane spanned by L."""
    return _unit_spacelike(_jvec(_ecross(L.a.data, L.b.data)))


def _line_frame(L: Geodesic) -> Tuple[Vec3, Vec3, Vec3]:
    """Canonical (normal, base point, unit tangent) frame of a hyperbolic line.

    The base point is the foot of the model origin; the tangent is oriented
    so anchor ``b`` has a larger parameter than anchor ``a``.
    """
    n = _line_normal(L)
    lam = _mdot(_H_ORIGIN, n)
    r0 = _renormalize(_vadd(_H_ORIGIN, _vscale(n, lam)))
    u = _unit_spacelike(_ecross(_jvec(n), _jvec(r0)))
    if -_mdot(L.b.data, u) < -_mdot(L.a.data, u):
        u = _vscale(u, -1.0)
        n = _vscale(n, -1.0)
    return n, r0, u


def _line_param(frame: Tuple[Vec3, Vec3, Vec3], x: Vec3) -> float:
    """Signed arc-length coordinate along the line of the projection of x."""
    _, _, u = frame
    n = frame[0]
    lam = _mdot(x, n)
    foot = _renormalize(_vadd(x, _vscale(n, lam)))
    return math.asinh(-_mdot(foot, u))


def orthogonal_project(p: Point, L: Geodesic) -> Point:
    """Foot of the perpendicular from ``p`` onto ``L``."""
    metric = require_same_metric(p, L.a)
    if metric is Metric.EUCLIDEAN:
        ax, ay = L.a.data
        bx, by = L.b.data
        dx, dy = bx - ax, by - ay
        t = ((p.data[0] - ax) * dx + (p.data[1] - ay) * dy) / (dx * dx + dy * dy)
        return euclidean_point(ax + t * dx, ay + t * dy)
    n = _line_normal(L)
    lam = _mdot(p.data, n)
    return Point(Metric.HYPERBOLIC, _renormalize(_vadd(p.data, _vscale(n, lam))))


def distance_to_line(p: Point, L: Geodesic) -> float:
    metric = require_same_metric(p, L.a)
    if metric is Metric.EUCLIDEAN:
        return distance(p, orthogonal_project(p, L))
    return abs(math.asinh(_mdot(p.data, _line_normal(L))))


def signed_line_coordinate(p: Point, L: Geodesic) -> float:
    """Arc-length coordinate along L of the projection of ``p``.

    Zero at anchor ``a``'s projection origin for E^2 (measured from anchor a
    toward anchor b); for H^2 the coordinate is measured along the canonical
    frame and then shifted so anchor ``a`` sits at zero.
    """
    metric = require_same_metric(p, L.a)
    if metric is Metric.EUCLIDEAN:
        ax, ay = L.a.data
        bx, by = L.b.data
        dx, dy = bx - ax, by - ay
        n = math.hypot(dx, dy)
        return ((p.data[0] - ax) * dx + (p.data[1] - ay) * dy) / n
    frame = _line_frame(L)
    return _line_param(frame, p.data) - _line_param(frame, L.a.data)


def angle_at(v: Point, p: Point, q: Point) -> float:
    """Interior angle at vertex ``v`` of the triangle (v, p, q), in [0, pi].

    Computed from the (Euclidean or hyperbolic) law of cosines with the
    cosine clamped to [-1, 1].
    """
    metric = require_same_metric(v, p, q)
    b = distance(v, p)
    c = distance(v, q)
    if b <= PREDICATE_TOL or c <= PREDICATE_TOL:
        raise GeometryError("coincident points")
    a = distance(p, q)
    if metric is Metric.EUCLIDEAN:
        cos_a = (b * b + c * c - a * a) / (2.0 * b * c)
    else:
        cos_a = (math.cosh(b) * math.cosh(c) - math.cosh(a)) / (
            math.sinh(b) * math.sinh(c))
    return math.acos(_clamp_cos(cos_a))


# ---------------------------------------------------------------------------
# Segments, rays, chart predicates
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Segment:
    """Closed segment [p, q]."""

    p: Point
    q: Point

    def __post_init__(self):
        require_same_metric(self.p, self.q)

    @property
    def metric(self) -> Metric:
        return self.p.metric


class RaySense(Enum):
    TOWARD = "toward"
    AWAY = "away"


@dataclass(frozen=True)
class Ray:
    """Closed ray from ``origin``; AWAY with anchor y encodes the ray in
    L(origin, y) that emanates from origin and does not contain y."""

    origin: Point
    anchor: Point
    sense: RaySense = RaySense.TOWARD

    def __post_init__(self):
        require_same_metric(self.origin, self.anchor)
        if distance(self.origin, self.anchor) <= PREDICATE_TOL:
            raise GeometryError("ray origin and anchor must be distinct")

    @property
    def metric(self) -> Metric:
        return self.origin.metric


class IntersectionKind(Enum):
    DISJOINT = "disjoint"
    POINT = "point"
    OVERLAP = "overlap"


@dataclass(frozen=True)
class SegmentIntersection:
    kind: IntersectionKind
    point: Optional[Point] = None
    overlap: Optional[Segment] = None


def _chart_segment_intersection(a, b, c, d, tol=PREDICATE_TOL):
    """Classify [a,b] vs [c,d] in chart coordinates.

    Returns (kind, payload): payload is a chart point for POINT and a chart
    point pair for OVERLAP.  Tolerance applies to the segment parameters.
    """
    d1 = (b[0] - a[0], b[1] - a[1])
    d2 = (d[0] - c[0], d[1] - c[1])
    r = (c[0] - a[0], c[1] - a[1])
    den = d1[0] * d2[1] - d1[1] * d2[0]
    len1 = math.hypot(*d1)
    len2 = math.hypot(*d2)
    if abs(den) > tol * len1 * len2:
        s = (r[0] * d2[1] - r[1] * d2[0]) / den
        t = (r[0] * d1[1] - r[1] * d1[0]) / den
        if -tol <= s <= 1.0 + tol and -tol <= t <= 1.0 + tol:
            s = min(1.0, max(0.0, s))
            return IntersectionKind.POINT, (a[0] + s * d1[0], a[1] + s * d1[1])
        return IntersectionKind.DISJOINT, None
    # Parallel: collinear iff the lateral offset of c from line(a,b) vanishes.
    off = r[0] * d1[1] - r[1] * d1[0]
    if abs(off) > tol * len1 * max(len1, len2):
        return IntersectionKind.DISJOINT, None
    inv = 1.0 / (len1 * len1)
    tc = (r[0] * d1[0] + r[1] * d1[1]) * inv
    td = ((d[0] - a[0]) * d1[0] + (d[1] - a[1]) * d1[1]) * inv
    lo, hi = min(tc, td), max(tc, td)
    lo, hi = max(lo, 0.0), min(hi, 1.0)
    if hi < lo - tol:
        return IntersectionKind.DISJOINT, None
    if hi - lo <= tol:
        m = 0.5 * (lo + hi)
        return IntersectionKind.POINT, (a[0] + m * d1[0], a[1] + m * d1[1])
    p1 = (a[0] + lo * d1[0], a[1] + lo * d1[1])
    p2 = (a[0] + hi * d1[0], a[1] + hi * d1[1])
    return IntersectionKind.OVERLAP, (p1, p2)


def segment_intersection(s1: Segment, s2: Segment) -> SegmentIntersection:
    """Exact classification of two closed segments: disjoint, point or overlap.

    Hyperbolic segments are mapped to the Klein model, where geodesics are
    straight chords, and the Euclidean routine is reused.
    """
    metric = require_same_metric(s1.p, s2.p)
    if distance(s1.p, s1.q) <= PREDICATE_TOL or distance(s2.p, s2.q) <= PREDICATE_TOL:
        raise DegenerateSegmentError("degenerate segment")
    kind, payload = _chart_segment_intersection(
        s1.p.chart, s1.q.chart, s2.p.chart, s2.q.chart)
    if kind is IntersectionKind.POINT:
        return SegmentIntersection(kind, point=point_from_chart(metric, payload))
    if kind is IntersectionKind.OVERLAP:
        return SegmentIntersection(kind, overlap=Segment(
            point_from_chart(metric, payload[0]),
            point_from_chart(metric, payload[1])))
    return SegmentIntersection(kind)


def _chart_ray(r: Ray) -> Tuple[Tuple[float, float], Tuple[float, float], Optional[float]]:
    """Chart origin, unit direction and parameter cap of a ray.

    A hyperbolic ray maps to the Klein chord from the origin to the ideal
    boundary, so its chart parameter is capped where the chord meets the
    unit circle; a Euclidean ray is uncapped.
    """
    o = r.origin.chart
    ax, ay = r.anchor.chart
    dx, dy = ax - o[0], ay - o[1]
    if r.sense is RaySense.AWAY:
        dx, dy = -dx, -dy
    n = math.hypot(dx, dy)
    dx, dy = dx / n, dy / n
    if r.metric is Metric.EUCLIDEAN:
        return o, (dx, dy), None
    # Clip at |o + t d| = 1.
    b = o[0] * dx + o[1] * dy
    c = o[0] * o[0] + o[1] * o[1] - 1.0
    t_end = -b + math.sqrt(b * b - c)
    return o, (dx, dy), t_end


def ray_segment_intersects(r: Ray, s: Segment) -> bool:
    """True iff the closed ray meets the closed segment."""
    require_same_metric(r.origin, s.p)
    if distance(s.p, s.q) <= PREDICATE_TOL:
        raise DegenerateSegmentError("degenerate segment")
    o, d, t_cap = _chart_ray(r)
    a = s.p.chart
    b = s.q.chart
    e = (b[0] - a[0], b[1] - a[1])
    le = math.hypot(*e)
    r0 = (a[0] - o[0], a[1] - o[1])
    den = d[0] * e[1] - d[1] * e[0]
    tol = PREDICATE_TOL
    if abs(den) > tol * le:
        t = (r0[0] * e[1] - r0[1] * e[0]) / den
        u = (r0[0] * d[1] - r0[1] * d[0]) / den
        if t < -tol or (t_cap is not None and t > t_cap + tol):
            return False
        return -tol <= u <= 1.0 + tol
    off = r0[0] * d[1] - r0[1] * d[0]
    if abs(off) > tol * max(1.0, le):
        return False
    ta = r0[0] * d[0] + r0[1] * d[1]
    tb = (b[0] - o[0]) * d[0] + (b[1] - o[1]) * d[1]
    hi = max(ta, tb)
    lo = min(ta, tb)
    if hi < -tol:
        return False
    if t_cap is not None and lo > t_cap + tol:
        return False
    return True


class Side(Enum):
    NEARER_P = "nearer_p"
    NEARER_Q = "nearer_q"
    EQUIDISTANT = "equidistant"


def bisector_separates(x: Point, p: Point, q: Point) -> Side:
    """Which side of the perpendicular bisector of [p, q] contains ``x``.

    Realized as a pure distance comparison with predicate tolerance, which
    is exactly what every bisector-separation argument needs.
    """
    require_same_metric(x, p, q)
    if distance(p, q) <= PREDICATE_TOL:
        raise GeometryError("bisector endpoints must be distinct")
    dp = distance(x, p)
    dq = distance(x, q)
    if dp < dq - PREDICATE_TOL:
        return Side.NEARER_P
    if dq < dp - PREDICATE_TOL:
        return Side.NEARER_Q
    return Side.EQUIDISTANT


def _chart_hull(points, tol=PREDICATE_TOL):
    """Convex hull (CCW, monotone chain) of a few chart points."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def half(seq):
        out = []
        for p in seq:
            while len(out) >= 2:
                o, a = out[-2], out[-1]
                if (a[0] - o[0]) * (p[1] - o[1]) - (a[1] - o[1]) * (p[0] - o[0]) <= tol:
                    out.pop()
                else:
                    break
            out.append(p)
        return out

    lower = half(pts)
    upper = half(list(reversed(pts)))
    hull = lower[:-1] + upper[:-1]
    return hull if len(hull) >= 3 else [pts[0], pts[-1]]


def _point_on_chart_segment(x, a, b, tol=PREDICATE_TOL) -> bool:
    dx, dy = b[0] - a[0], b[1] - a[1]
    le = math.hypot(dx, dy)
    if le <= tol:
        return math.hypot(x[0] - a[0], x[1] - a[1]) <= tol
    cr = (x[0] - a[0]) * dy - (x[1] - a[1]) * dx
    if abs(cr) > tol * le:
        return False
    t = ((x[0] - a[0]) * dx + (x[1] - a[1]) * dy) / (le * le)
    return -tol <= t <= 1.0 + tol


def in_convex_hull(x: Point, generators: Sequence[Point]) -> bool:
    """Closed convex-hull membership for 3 or 4 generators.

    Hyperbolic hulls are decided in the Klein chart, where geodesic convexity
    coincides with chord convexity.
    """
    require_same_metric(x, *generators)
    xc = x.chart
    pts = [g.chart for g in generators]
    hull = _chart_hull(pts)
    if len(hull) == 1:
        return math.hypot(xc[0] - hull[0][0], xc[1] - hull[0][1]) <= PREDICATE_TOL
    if len(hull) == 2:
        return _point_on_chart_segment(xc, hull[0], hull[1])
    k = len(hull)
    for i in range(k):
        a = hull[i]
        b = hull[(i + 1) % k]
        cr = (b[0] - a[0]) * (xc[1] - a[1]) - (b[1] - a[1]) * (xc[0] - a[0])
        if cr < -PREDICATE_TOL:
            return False
    return True


# ---------------------------------------------------------------------------
# Hyperbolic isometries (boosts and rotations about the model origin)
# ---------------------------------------------------------------------------

def hyperbolic_translation(target: Point) -> Mat3:
    """The pure boost taking the model origin to ``target``."""
    x0, x1, x2 = target.hyperboloid
    d = math.hypot(x1, x2)
    if d < 1e-300:
        return ((1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0))
    v1, v2 = x1 / d, x2 / d
    ch, sh = x0, d
    return ((ch, sh * v1, sh * v2),
            (sh * v1, 1.0 + (ch - 1.0) * v1 * v1, (ch - 1.0) * v1 * v2),
            (sh * v2, (ch - 1.0) * v1 * v2, 1.0 + (ch - 1.0) * v2 * v2))


def hyperbolic_rotation(angle: float) -> Mat3:
    c, s = math.cos(angle), math.sin(angle)
    return ((1.0, 0.0, 0.0), (0.0, c, -s), (0.0, s, c))


def mat_mul(A: Mat3, B: Mat3) -> Mat3:
    return tuple(
        tuple(sum(A[i][k] * B[k][j] for k in range(3)) for j in range(3))
        for i in range(3))  # type: ignore[return-value]


def mat_vec(A: Mat3, x: Vec3) -> Vec3:
    return (A[0][0] * x[0] + A[0][1] * x[1] + A[0][2] * x[2],
            A[1][0] * x[0] + A[1][1] * x[1] + A[1][2] * x[2],
            A[2][0] * x[0] + A[2][1] * x[1] + A[2][2] * x[2])


def lorentz_inverse(A: Mat3) -> Mat3:
    """Inverse of a Lorentz matrix: J A^T J with J = diag(1, -1, -1)."""
    return ((A[0][0], -A[1][0], -A[2][0]),
            (-A[0][1], A[1][1], A[2][1]),
            (-A[0][2], A[1][2], A[2][2]))


def apply_isometry(A: Mat3, p: Point) -> Point:
    return Point(Metric.HYPERBOLIC, _renormalize(mat_vec(A, p.hyperboloid)))


# ---------------------------------------------------------------------------
# Hypercycles
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Hypercycle:
    """Curve at constant distance ``signed_offset`` from ``reference_line``.

    The sign of the offset is relative to the canonical orientation of the
    reference line's frame; offset zero degenerates to the line itself.
    """

    reference_line: Geodesic
    signed_offset: float

    def _frame(self):
        return _line_frame(self.reference_line)

    def point_at(self, t: float) -> Point:
        """Point of the hypercycle above reference-line parameter ``t``."""
        n, r0, u = self._frame()
        g = _vadd(_vscale(r0, math.cosh(t)), _vscale(u, math.sinh(t)))
        d = self.signed_offset
        x = _vadd(_vscale(g, math.cosh(d)), _vscale(n, -math.sinh(d)))
        return Point(Metric.HYPERBOLIC, _renormalize(x))

    def signed_offset_of(self, p: Point) -> float:
        n, _, _ = self._frame()
        return math.asinh(_mdot(p.hyperboloid, n))

    def foot_parameter(self, p: Point) -> float:
        """Reference-line parameter of the projection of ``p``."""
        return _line_param(self._frame(), p.hyperboloid)

    def contains(self, p: Point, tol: float = PROPERTY_TOL) -> bool:
        return abs(self.signed_offset_of(p) - self.signed_offset) <= tol


def _reference_line_from_normal(m: Vec3) -> Tuple[Geodesic, Vec3]:
    """Build a Geodesic for the plane with unit normal ``m``.

    Returns the line together with the canonical normal of the constructed
    line, which equals ``m`` (anchors are ordered to make it so).
    """
    lam = _mdot(_H_ORIGIN, m)
    r0 = _renormalize(_vadd(_H_ORIGIN, _vscale(m, lam)))
    u = _unit_spacelike(_ecross(_jvec(m), _jvec(r0)))
    a = Point(Metric.HYPERBOLIC, r0)
    b = Point(Metric.HYPERBOLIC, _renormalize(
        _vadd(_vscale(r0, math.cosh(1.0)), _vscale(u, math.sinh(1.0)))))
    L = Geodesic(Metric.HYPERBOLIC, a, b)
    n_canon = _line_frame(L)[0]
    if _mdot(n_canon, m) < 0.0:
        L = Geodesic(Metric.HYPERBOLIC, b, a)
        n_canon = _line_frame(L)[0]
    return L, n_canon


def hypercycle_orthogonal_through(base: Geodesic, p: Point, a: Point) -> Hypercycle:
    """Hypercycle through ``p`` and ``a`` whose reference line is orthogonal
    to ``base``.

    The reference line L* satisfies <m, n_base> = 0 (orthogonal lines), and
    p, a are at equal signed distance from L*, which is the defining property
    of a hypercycle through both.
    """
    require_same_metric(base.a, p, a)
    if base.metric is not Metric.HYPERBOLIC:
        raise GeometryError("hypercycles exist only in H^2")
    if distance(p, a) <= PREDICATE_TOL:
        raise GeometryError("hypercycle points must be distinct")
    nb = _line_normal(base)
    w = (p.data[0] - a.data[0], p.data[1] - a.data[1], p.data[2] - a.data[2])
    m_raw = _jvec(_ecross(w, nb))
    q = -_mdot(m_raw, m_raw)
    if q <= PREDICATE_TOL:
        raise InfeasibleHypercycleError("infeasible hypercycle")
    m = _vscale(m_raw, 1.0 / math.sqrt(q))
    ref, n_canon = _reference_line_from_normal(m)
    offset = math.asinh(_mdot(p.hyperboloid, n_canon))
    H = Hypercycle(ref, offset)
    for x in (p, a):
        if abs(H.signed_offset_of(x) - offset) > INCIDENCE_TOL:
            raise InfeasibleHypercycleError("infeasible hypercycle")
    return H


def hypercycle_with_reference_line(ref: Geodesic, c: Point) -> Hypercycle:
    """The hypercycle with reference line ``ref`` passing through ``c``."""
    require_same_metric(ref.a, c)
    if ref.metric is not Metric.HYPERBOLIC:
        raise GeometryError("hypercycles exist only in H^2")
    n = _line_frame(ref)[0]
    return Hypercycle(ref, math.asinh(_mdot(c.hyperboloid, n)))


def hypercycle_distance_monotone_check(x: Point, H: Hypercycle,
                                       y1: Point, y2: Point) -> bool:
    """Oracle for the hypercycle monotonicity law.

    If y2 is at least as far as y1 (arc length along H) from the projection
    of x onto H, then dist(x, y2) >= dist(x, y1) - PROPERTY_TOL must hold.
    Returns True iff that implication holds for this sample.
    """
    require_same_metric(x, y1, y2, H.reference_line.a)
    for y in (y1, y2):
        if not H.contains(y, PROPERTY_TOL):
            raise GeometryError("point off the hypercycle")
    tx = H.foot_parameter(x)
    arc_scale = math.cosh(H.signed_offset)
    a1 = arc_scale * abs(H.foot_parameter(y1) - tx)
    a2 = arc_scale * abs(H.foot_parameter(y2) - tx)
    if a2 < a1:
        return True
    return distance(x, y2) >= distance(x, y1) - PROPERTY_TOL

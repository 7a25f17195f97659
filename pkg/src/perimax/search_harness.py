"""Randomized and constructive stress tests of the perimeter bound.

Three kinds of adversary live here: a random simple-polygon generator, an
accept-only-improvement hill climb on the perimeter, and the near-extremal
zigzag constructions that approach the bound from below (multiplied longest
triangle side for odd n, multiplied diameter for even n).  The campaign
driver runs many independent climbs against the computed bound and certifies
every final polygon.
"""

from __future__ import annotations

import math
import os
import sys
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from .metric_plane import (
    GeometryError,
    Metric,
    Point,
    distance,
    geodesic_point,
    point_from_chart,
    point_toward,
    _perp_tangent,
    _tangent_toward,
)
from .convex_body import (
    ConvexBody,
    chart_bbox,
    contains,
    diameter,
    diameter_pair,
    interior_point,
)
from .simple_polygon import (
    ClosedPolygon,
    closed_polygon,
    contained_in,
    is_simple,
    perimeter,
    uncross,
)
from .triangle_bound import BoundResult, bound_for
from .certificate import certify

# Seed offset separating the climb stream from the generator stream within
# one restart (both restart-level seeds are base_seed + restart_index).
_CLIMB_SEED_OFFSET = 1_000_003


class ConstructionError(GeometryError):
    pass


class ViolationError(GeometryError):
    """The falsification signal: a polygon exceeded the bound."""

    def __init__(self, message: str, polygon: ClosedPolygon):
        super().__init__(message)
        self.polygon = polygon


@dataclass(frozen=True)
class SearchReport:
    body: ConvexBody
    n: int
    bound: float
    trials: int
    best_perimeter: Optional[float]
    best_polygon: Optional[ClosedPolygon]
    max_slack_violation: Optional[float]
    seed: int


def random_simple_polygon(C: ConvexBody, n: int, seed: int) -> ClosedPolygon:
    """n points sampled uniformly in C (rejection in the chart bounding box),
    in sample order, repaired by uncrossing; deterministic for a fixed seed."""
    if n < 3:
        raise GeometryError("polygon needs at least 3 vertices")
    rng = np.random.default_rng(seed)
    x0, y0, x1, y1 = chart_bbox(C)
    hyper = C.metric is Metric.HYPERBOLIC
    for _ in range(50):
        pts: List[Point] = []
        guard = 0
        while len(pts) < n:
            guard += 1
            if guard > 100000:
                raise GeometryError("rejection sampling failed to hit the body")
            x = rng.uniform(x0, x1)
            y = rng.uniform(y0, y1)
            if hyper and x * x + y * y >= 1.0:
                continue
            p = point_from_chart(C.metric, (x, y))
            if contains(C, p):
                pts.append(p)
        if min(distance(pts[i], pts[j])
               for i in range(n) for j in range(i + 1, n)) <= 1e-9:
            continue
        try:
            P = uncross(closed_polygon(pts), max_passes=50 * n)
        except GeometryError:
            continue
        if contained_in(P, C):
            return P
    raise GeometryError("could not generate a simple polygon in 50 rounds")


def default_step_scale(C: ConvexBody) -> float:
    x0, y0, x1, y1 = chart_bbox(C)
    return 0.25 * max(x1 - x0, y1 - y0)


def _kernel_body(C: ConvexBody):
    hyper = C.metric is Metric.HYPERBOLIC
    if C.is_disk:
        c = C.shape.center.chart
        r = C.shape.radius
        third = math.cosh(r) if hyper else r
        return hyper, 0, np.array([c[0], c[1], third], dtype=np.float64), \
            np.zeros((0, 2), dtype=np.float64)
    poly = np.array([v.chart for v in C.shape.vertices], dtype=np.float64)
    return hyper, 1, np.zeros(3, dtype=np.float64), poly


def local_search_max_perimeter(P0: ClosedPolygon, C: ConvexBody, steps: int,
                               step_scale: float, seed: int) -> ClosedPolygon:
    """Hill climb: perturb one random vertex per step (clamped into C along
    the displacement ray), accept iff the polygon stays simple and the
    perimeter increases; the step scale halves every steps/10 rejections."""
    check = is_simple(P0)
    if not check.simple:
        raise GeometryError("initial polygon is not simple")
    if not contained_in(P0, C):
        raise GeometryError("initial polygon not contained in body")
    if steps <= 0:
        return P0
    from . import _kernels

    chart = np.array([v.chart for v in P0.vertices], dtype=np.float64)
    hyper, kind, disk_params, poly = _kernel_body(C)
    rnd = np.random.default_rng(seed).random((steps, 3))
    halve_every = max(1, steps // 10)
    _kernels.climb(chart, hyper, kind, disk_params, poly,
                   float(step_scale), halve_every, rnd)
    out = closed_polygon([point_from_chart(C.metric, (x, y)) for x, y in chart])
    if not is_simple(out).simple or not contained_in(out, C):
        raise GeometryError("search kernel produced an invalid polygon")
    if perimeter(out) < perimeter(P0) - 1e-12:
        raise GeometryError("search kernel decreased the perimeter")
    return out


# ---------------------------------------------------------------------------
# Near-extremal constructions
# ---------------------------------------------------------------------------

def _checked(P: ClosedPolygon, C: ConvexBody, eps: float) -> ClosedPolygon:
    if not contained_in(P, C):
        raise ConstructionError(
            "construction left the body at eps=%g; use a smaller eps" % eps)
    check = is_simple(P)
    if not check.simple:
        raise ConstructionError(
            "construction is not simple at eps=%g (edges %s); use a smaller eps"
            % (eps, check.witness))
    return P


def near_extremal_odd(C: ConvexBody, n: int, eps: float) -> ClosedPolygon:
    """Simple n-gon whose perimeter approaches the odd-n bound.

    The optimizer's triangle supplies the longest side [x, y] and apex z; the
    cycle z, x1, y1, x2, y2, ... multiplies the longest side n-2 times, with
    the k-th copy of each cluster pushed inward (toward the triangle's chart
    centroid) by k*eps so the near-longest edges become disjoint nested
    chords.  Simplicity and containment are checked, not assumed.
    """
    if n < 3 or n % 2 == 0:
        raise GeometryError("n must be odd and >= 3")
    if not eps > 0.0:
        raise GeometryError("eps must be positive")
    br = bound_for(C, n)
    p0, p1, p2 = br.triangle.vertex_points
    d01, d12, d02 = distance(p0, p1), distance(p1, p2), distance(p0, p2)
    pairs = [(d01, p0, p1, p2), (d12, p1, p2, p0), (d02, p0, p2, p1)]
    _, u1, u2, z = max(pairs, key=lambda t: t[0])
    if n == 3:
        return _checked(closed_polygon([z, u1, u2]), C, eps)
    x, y = (u1, u2) if distance(z, u1) <= distance(z, u2) else (u2, u1)
    cx = (x.chart[0] + y.chart[0] + z.chart[0]) / 3.0
    cy = (x.chart[1] + y.chart[1] + z.chart[1]) / 3.0
    g = point_from_chart(C.metric, (cx, cy))
    m = (n - 1) // 2
    if m * eps >= 0.5 * min(distance(x, g), distance(y, g)):
        raise ConstructionError(
            "eps=%g too large for the optimizer triangle; use a smaller eps" % eps)
    verts: List[Point] = [z]
    for k in range(1, m + 1):
        verts.append(point_toward(x, g, k * eps))
        verts.append(point_toward(y, g, k * eps))
    return _checked(closed_polygon(verts), C, eps)


def near_extremal_even(C: ConvexBody, n: int, eps: float) -> ClosedPolygon:
    """Simple n-gon whose perimeter approaches the even-n bound n * diam C.

    Vertices alternate near a diameter pair, pushed inward along the diameter
    by k*eps.  A pure inward displacement would put every vertex on the
    diameter line, making the edges overlap, so each vertex also receives a
    small perpendicular height.  All edges are straight in the chart, so the
    heights are chosen from exact chart positions: right heights climb to the
    probed headroom, left heights grow just fast enough to outpace the rung
    slopes (factor 1.3) while staying under the closing edge's clearance
    line (factor 0.75).  Simplicity and containment are checked, not assumed.
    """
    if n < 4 or n % 2 == 1:
        raise GeometryError("n must be even and >= 4")
    if not eps > 0.0:
        raise GeometryError("eps must be positive")
    d1, d2 = diameter_pair(C)
    D = distance(d1, d2)
    m = n // 2
    if m * eps >= 0.1 * D:
        raise ConstructionError(
            "eps=%g too large for the diameter; use a smaller eps" % eps)
    hyper = C.metric is Metric.HYPERBOLIC
    c1 = d1.chart
    c2 = d2.chart
    span_x = math.hypot(c2[0] - c1[0], c2[1] - c1[1])
    ux, uy = (c2[0] - c1[0]) / span_x, (c2[1] - c1[1]) / span_x
    wx, wy = -uy, ux

    left_bases = [point_toward(d1, d2, k * eps).chart for k in range(1, m + 1)]
    right_bases = [point_toward(d2, d1, k * eps).chart for k in range(1, m + 1)]
    sL = [(b[0] - c1[0]) * ux + (b[1] - c1[1]) * uy for b in left_bases]
    sR = [(b[0] - c1[0]) * ux + (b[1] - c1[1]) * uy for b in right_bases]

    def lift(base, h):
        return point_from_chart(C.metric, (base[0] + h * wx, base[1] + h * wy))

    def headroom(base) -> float:
        def inside(h: float) -> bool:
            x, y = base[0] + h * wx, base[1] + h * wy
            if hyper and x * x + y * y >= 1.0:
                return False
            return contains(C, point_from_chart(C.metric, (x, y)))
        hi = eps
        while inside(hi) and hi < 2.0 * span_x:
            hi *= 2.0
        lo = 0.0
        for _ in range(60):
            mid = 0.5 * (lo + hi)
            if inside(mid):
                lo = mid
            else:
                hi = mid
        return lo

    G = 0.4 * min(headroom(right_bases[-1]), headroom(left_bases[-1]))
    if G <= 0.0:
        raise ConstructionError("no perpendicular headroom; use a smaller eps")
    rho = [G * k / m for k in range(1, m + 1)]
    lam = [0.0]
    for k in range(1, m):
        gap = sL[k] - sL[k - 1]
        span_k = sR[k - 1] - sL[k - 1]
        lam.append(lam[-1] + 1.3 * rho[k - 1] * gap / span_k)
    span_close = sR[-1] - sL[0]
    for k in range(1, m):
        clearance = G * (sL[k] - sL[0]) / span_close
        if lam[k] > 0.75 * clearance:
            raise ConstructionError(
                "closing-edge clearance failed at eps=%g; use a smaller eps" % eps)
    verts: List[Point] = []
    for k in range(m):
        verts.append(lift(left_bases[k], lam[k]))
        verts.append(lift(right_bases[k], rho[k]))
    return _checked(closed_polygon(verts), C, eps)


# ---------------------------------------------------------------------------
# Campaigns
# ---------------------------------------------------------------------------

def verify_no_counterexample(C: ConvexBody, n: int, trials: int, steps: int,
                             seed: int, step_scale: Optional[float] = None,
                             progress=None) -> SearchReport:
    """Run ``trials`` independent climbs against the computed bound.

    Restart i uses seed + i.  Every final polygon is certified; the report
    invariant is best perimeter <= bound within 1e-9 relative.  A violation
    raises ViolationError carrying the offending polygon.  Restarts run in
    parallel when the PERIMAX_THREADS environment variable exceeds 1, with
    the reduction done in restart order so the report is identical either
    way.
    """
    if n < 3 or n % 2 == 0:
        raise GeometryError("n must be odd and >= 3")
    br = bound_for(C, n)
    bound = br.value
    scale = step_scale if step_scale is not None else default_step_scale(C)
    stream = progress if progress is not None else sys.stderr

    def run(i: int) -> ClosedPolygon:
        P0 = random_simple_polygon(C, n, seed + i)
        return local_search_max_perimeter(
            P0, C, steps, scale, seed + i + _CLIMB_SEED_OFFSET)

    threads = 0
    env = os.environ.get("PERIMAX_THREADS", "")
    if env.strip():
        try:
            threads = int(env)
        except ValueError:
            threads = 0
    if threads > 1 and trials > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=threads) as ex:
            finals = list(ex.map(run, range(trials)))
    else:
        finals = [run(i) for i in range(trials)]

    best_per: Optional[float] = None
    best_poly: Optional[ClosedPolygon] = None
    max_viol: Optional[float] = None
    for i, P in enumerate(finals):
        per = perimeter(P)
        certify(P, C)
        viol = per - bound
        if max_viol is None or viol > max_viol:
            max_viol = viol
        if best_per is None or per > best_per:
            best_per, best_poly = per, P
        print("restart=%d best=%.17g" % (i, best_per), file=stream)
        if per > bound + 1e-9 * max(1.0, bound):
            raise ViolationError(
                "perimeter %.17g exceeds bound %.17g" % (per, bound), P)
    return SearchReport(C, n, bound, trials, best_per, best_poly, max_viol, seed)

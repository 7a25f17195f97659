"""Deterministic SVG figures: body outline, polygon path, triangle overlay.

Chart coordinates map to a 1000x1000 viewBox with the second axis flipped.
The Poincare disk is rendered as a circle of radius 480 centered in the
viewBox; hyperbolic geodesics are drawn as circular arcs orthogonal to the
model circle, hyperbolic circles as their (Euclidean) image circles.  All
numbers are printed with fixed precision so identical inputs give identical
bytes.
"""

from __future__ import annotations

import math
from typing import List, Optional, Sequence, Tuple

from .metric_plane import Metric, Point
from .convex_body import ConvexBody, boundary_point
from .simple_polygon import ClosedPolygon

_VIEW = 1000.0
_H_RADIUS = 480.0


def _fmt(x: float) -> str:
    return "%.9f" % x


class _Mapper:
    """Affine chart-to-viewBox map (uniform scale, y flipped)."""

    def __init__(self, cx: float, cy: float, half_extent: float):
        self.cx = cx
        self.cy = cy
        self.scale = (_VIEW / 2.0) / half_extent

    def __call__(self, xy: Tuple[float, float]) -> Tuple[float, float]:
        return (_VIEW / 2.0 + (xy[0] - self.cx) * self.scale,
                _VIEW / 2.0 - (xy[1] - self.cy) * self.scale)


def _euclidean_mapper(C: ConvexBody) -> _Mapper:
    from .convex_body import chart_bbox
    x0, y0, x1, y1 = chart_bbox(C)
    half = 0.55 * max(x1 - x0, y1 - y0)
    return _Mapper(0.5 * (x0 + x1), 0.5 * (y0 + y1), half)


def _hyperbolic_mapper() -> _Mapper:
    return _Mapper(0.0, 0.0, _VIEW / 2.0 / _H_RADIUS)


def _poincare_geodesic_arc(z1, z2) -> Optional[Tuple[float, float, float, int]]:
    """Center, radius and sweep flag of the Poincare geodesic through z1, z2.

    Returns None when the geodesic is a diameter (chord through the origin).
    The circle satisfies |o|^2 = R^2 + 1 (orthogonality to the unit circle).
    """
    det = 2.0 * (z1[0] * z2[1] - z1[1] * z2[0])
    if abs(det) < 1e-12:
        return None
    b1 = z1[0] * z1[0] + z1[1] * z1[1] + 1.0
    b2 = z2[0] * z2[0] + z2[1] * z2[1] + 1.0
    ox = (b1 * 2.0 * z2[1] - b2 * 2.0 * z1[1]) / (2.0 * det)
    oy = (b2 * 2.0 * z1[0] - b1 * 2.0 * z2[0]) / (2.0 * det)
    r2 = ox * ox + oy * oy - 1.0
    if r2 <= 0.0:
        return None
    cross = (z1[0] - ox) * (z2[1] - oy) - (z1[1] - oy) * (z2[0] - ox)
    sweep = 0 if cross > 0.0 else 1  # viewBox y is flipped
    return ox, oy, math.sqrt(r2), sweep


def _edge_command(metric: Metric, a: Point, b: Point, mapper: _Mapper) -> str:
    if metric is Metric.EUCLIDEAN:
        x, y = mapper(b.coords)
        return "L %s %s" % (_fmt(x), _fmt(y))
    arc = _poincare_geodesic_arc(a.coords, b.coords)
    x, y = mapper(b.coords)
    if arc is None:
        return "L %s %s" % (_fmt(x), _fmt(y))
    _, _, r, sweep = arc
    rs = r * mapper.scale
    return "A %s %s 0 0 %d %s %s" % (_fmt(rs), _fmt(rs), sweep, _fmt(x), _fmt(y))


def _closed_path(metric: Metric, pts: Sequence[Point], mapper: _Mapper) -> str:
    x, y = mapper(pts[0].coords)
    cmds = ["M %s %s" % (_fmt(x), _fmt(y))]
    for i in range(len(pts)):
        a = pts[i]
        b = pts[(i + 1) % len(pts)]
        cmds.append(_edge_command(metric, a, b, mapper))
    cmds.append("Z")
    return " ".join(cmds)


def _hyperbolic_circle_image(C: ConvexBody) -> Tuple[float, float, float]:
    """Euclidean center and radius of a hyperbolic circle in the Poincare disk."""
    c = C.shape.center
    r = C.shape.radius
    u, v = c.coords
    dc = math.hypot(u, v)
    d_center = 2.0 * math.atanh(dc) if dc > 0.0 else 0.0
    far = math.tanh((d_center + r) / 2.0)
    near = math.tanh((d_center - r) / 2.0)
    if dc > 0.0:
        ux, uy = u / dc, v / dc
    else:
        ux, uy = 1.0, 0.0
    fx, fy = far * ux, far * uy
    nx, ny = near * ux, near * uy
    return 0.5 * (fx + nx), 0.5 * (fy + ny), 0.5 * math.hypot(fx - nx, fy - ny)


def _body_element(C: ConvexBody, mapper: _Mapper) -> str:
    style = 'fill="none" stroke="black" stroke-width="2"'
    if C.is_disk:
        if C.metric is Metric.EUCLIDEAN:
            cx, cy = mapper(C.shape.center.coords)
            return '<circle cx="%s" cy="%s" r="%s" %s/>' % (
                _fmt(cx), _fmt(cy), _fmt(C.shape.radius * mapper.scale), style)
        ex, ey, er = _hyperbolic_circle_image(C)
        cx, cy = mapper((ex, ey))
        return '<circle cx="%s" cy="%s" r="%s" %s/>' % (
            _fmt(cx), _fmt(cy), _fmt(er * mapper.scale), style)
    path = _closed_path(C.metric, C.shape.vertices, mapper)
    return '<path d="%s" %s/>' % (path, style)


def render_svg(C: ConvexBody, polygon: Optional[ClosedPolygon] = None,
               triangle: Optional[Sequence[Point]] = None) -> str:
    """SVG document with body outline, then polygon, then triangle overlay."""
    if C.metric is Metric.EUCLIDEAN:
        mapper = _euclidean_mapper(C)
    else:
        mapper = _hyperbolic_mapper()
    parts: List[str] = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 1000 1000">',
    ]
    if C.metric is Metric.HYPERBOLIC:
        parts.append(
            '<circle cx="500" cy="500" r="%s" fill="none" stroke="#999999" '
            'stroke-width="1"/>' % _fmt(_H_RADIUS))
    parts.append(_body_element(C, mapper))
    if polygon is not None:
        parts.append('<path d="%s" fill="none" stroke="#1f77b4" stroke-width="2"/>'
                     % _closed_path(polygon.metric, polygon.vertices, mapper))
    if triangle is not None:
        parts.append('<path d="%s" fill="none" stroke="#d62728" stroke-width="2"/>'
                     % _closed_path(C.metric, list(triangle), mapper))
    parts.append('</svg>')
    return "\n".join(parts) + "\n"

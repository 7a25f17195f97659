"""Compiled inner loops for the adversarial perimeter search.

The hill climb mutates one vertex per step and needs a simplicity recheck of
the two moved edges against the rest of the polygon, which is far too hot for
Python objects at 10^5 steps x 32 restarts.  The kernels work on raw chart
coordinate arrays (Cartesian for E^2, Klein for H^2) and are deliberately
stricter than the library predicates: every state they accept passes the
library's is_simple / contains checks afterwards.

body_kind 0 is a disk, 1 a convex polygon.  Disk parameters are
(cx, cy, r) in E^2 and (klein_cx, klein_cy, cosh r) in H^2.
"""

import math

import numpy as np
from numba import njit

# Guards: chart-space floors that keep accepted states strictly inside the
# library's closed-test tolerances.
_SEP = 1e-9


@njit(cache=True, nogil=True, inline="always")
def _edge_len(hyper, ax, ay, bx, by):
    if not hyper:
        return math.hypot(bx - ax, by - ay)
    # stable form: lift Klein points to the hyperboloid and use
    # 2*asinh(|x - y|_M / 2), cancellation-free for short edges
    f1 = 1.0 / math.sqrt(1.0 - ax * ax - ay * ay)
    f2 = 1.0 / math.sqrt(1.0 - bx * bx - by * by)
    d0 = f1 - f2
    d1 = f1 * ax - f2 * bx
    d2 = f1 * ay - f2 * by
    s = d1 * d1 + d2 * d2 - d0 * d0
    if s <= 0.0:
        return 0.0
    return 2.0 * math.asinh(0.5 * math.sqrt(s))


@njit(cache=True, nogil=True, inline="always")
def _contains(hyper, body_kind, disk_params, poly, x, y):
    if hyper and x * x + y * y >= 1.0:
        return False
    if body_kind == 0:
        if not hyper:
            dx = x - disk_params[0]
            dy = y - disk_params[1]
            return dx * dx + dy * dy <= disk_params[2] * disk_params[2]
        s1 = 1.0 - x * x - y * y
        s2 = 1.0 - disk_params[0] * disk_params[0] - disk_params[1] * disk_params[1]
        num = 1.0 - (x * disk_params[0] + y * disk_params[1])
        return num <= disk_params[2] * math.sqrt(s1 * s2)
    k = poly.shape[0]
    for i in range(k):
        ax = poly[i, 0]
        ay = poly[i, 1]
        j = i + 1
        if j == k:
            j = 0
        bx = poly[j, 0]
        by = poly[j, 1]
        if (bx - ax) * (y - ay) - (by - ay) * (x - ax) < -1e-13:
            return False
    return True


@njit(cache=True, nogil=True, inline="always")
def _pt_seg_dist(px, py, ax, ay, bx, by):
    dx = bx - ax
    dy = by - ay
    l2 = dx * dx + dy * dy
    if l2 <= 0.0:
        return math.hypot(px - ax, py - ay)
    t = ((px - ax) * dx + (py - ay) * dy) / l2
    if t < 0.0:
        t = 0.0
    elif t > 1.0:
        t = 1.0
    return math.hypot(px - ax - t * dx, py - ay - t * dy)


@njit(cache=True, nogil=True, inline="always")
def _seg_seg_dist(ax, ay, bx, by, cx, cy, dx, dy):
    o1 = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
    o2 = (bx - ax) * (dy - ay) - (by - ay) * (dx - ax)
    o3 = (dx - cx) * (ay - cy) - (dy - cy) * (ax - cx)
    o4 = (dx - cx) * (by - cy) - (dy - cy) * (bx - cx)
    if ((o1 > 0.0 and o2 < 0.0) or (o1 < 0.0 and o2 > 0.0)) and \
       ((o3 > 0.0 and o4 < 0.0) or (o3 < 0.0 and o4 > 0.0)):
        return 0.0
    d1 = _pt_seg_dist(ax, ay, cx, cy, dx, dy)
    d2 = _pt_seg_dist(bx, by, cx, cy, dx, dy)
    d3 = _pt_seg_dist(cx, cy, ax, ay, bx, by)
    d4 = _pt_seg_dist(dx, dy, ax, ay, bx, by)
    m = d1
    if d2 < m:
        m = d2
    if d3 < m:
        m = d3
    if d4 < m:
        m = d4
    return m


@njit(cache=True, nogil=True, inline="always")
def _turn_ok(vx, vy, x1, y1, x2, y2):
    """Adjacent edges at a shared vertex must not overlap along a line."""
    d1x = x1 - vx
    d1y = y1 - vy
    d2x = x2 - vx
    d2y = y2 - vy
    cross = d1x * d2y - d1y * d2x
    dot = d1x * d2x + d1y * d2y
    if dot <= 0.0:
        return True
    return abs(cross) > _SEP * math.hypot(d1x, d1y) * math.hypot(d2x, d2y)


@njit(cache=True, nogil=True)
def _move_ok(chart, vi, nx, ny):
    """Would replacing vertex vi by (nx, ny) keep the polygon safely simple?"""
    n = chart.shape[0]
    ip = vi - 1
    if ip < 0:
        ip = n - 1
    iq = vi + 1
    if iq == n:
        iq = 0
    for j in range(n):
        if j != vi:
            if math.hypot(chart[j, 0] - nx, chart[j, 1] - ny) < _SEP:
                return False
    # turns at the moved vertex and at its two neighbors
    if not _turn_ok(nx, ny, chart[ip, 0], chart[ip, 1], chart[iq, 0], chart[iq, 1]):
        return False
    ipp = ip - 1
    if ipp < 0:
        ipp = n - 1
    iqq = iq + 1
    if iqq == n:
        iqq = 0
    if not _turn_ok(chart[ip, 0], chart[ip, 1], chart[ipp, 0], chart[ipp, 1], nx, ny):
        return False
    if not _turn_ok(chart[iq, 0], chart[iq, 1], nx, ny, chart[iqq, 0], chart[iqq, 1]):
        return False
    # the two moved edges against every non-incident edge
    for j in range(n):
        jq = j + 1
        if jq == n:
            jq = 0
        if j == ip or j == vi:
            continue
        cx = chart[j, 0]
        cy = chart[j, 1]
        dx = chart[jq, 0]
        dy = chart[jq, 1]
        # edge (ip -> vi'): shares vertex ip with edge (ip-1 -> ip)
        if j != ipp:
            if _seg_seg_dist(chart[ip, 0], chart[ip, 1], nx, ny, cx, cy, dx, dy) < _SEP:
                return False
        # edge (vi' -> iq): shares vertex iq with edge (iq -> iq+1)
        if j != iq:
            if _seg_seg_dist(nx, ny, chart[iq, 0], chart[iq, 1], cx, cy, dx, dy) < _SEP:
                return False
    return True


@njit(cache=True, nogil=True)
def climb(chart, hyper, body_kind, disk_params, poly, scale0, halve_every, rnd):
    """Accept-only-improvement hill climb; mutates ``chart`` in place.

    Per step: displace one random vertex within the current step scale, clamp
    back into the body along the displacement ray if needed, accept iff the
    polygon stays (strictly) simple and the perimeter increases.  The scale
    halves after every ``halve_every`` rejections.
    """
    n = chart.shape[0]
    steps = rnd.shape[0]
    elen = np.empty(n)
    for i in range(n):
        j = i + 1
        if j == n:
            j = 0
        elen[i] = _edge_len(hyper, chart[i, 0], chart[i, 1], chart[j, 0], chart[j, 1])
    scale = scale0
    rejects = 0
    accepts = 0
    for s in range(steps):
        vi = int(rnd[s, 0] * n)
        if vi >= n:
            vi = n - 1
        ox = chart[vi, 0]
        oy = chart[vi, 1]
        nx = ox + scale * (2.0 * rnd[s, 1] - 1.0)
        ny = oy + scale * (2.0 * rnd[s, 2] - 1.0)
        if not _contains(hyper, body_kind, disk_params, poly, nx, ny):
            lo = 0.0
            hi = 1.0
            for _ in range(60):
                mid = 0.5 * (lo + hi)
                mx = ox + mid * (nx - ox)
                my = oy + mid * (ny - oy)
                if _contains(hyper, body_kind, disk_params, poly, mx, my):
                    lo = mid
                else:
                    hi = mid
            nx = ox + lo * (nx - ox)
            ny = oy + lo * (ny - oy)
        ip = vi - 1
        if ip < 0:
            ip = n - 1
        iq = vi + 1
        if iq == n:
            iq = 0
        e1 = _edge_len(hyper, chart[ip, 0], chart[ip, 1], nx, ny)
        e2 = _edge_len(hyper, nx, ny, chart[iq, 0], chart[iq, 1])
        delta = e1 + e2 - elen[ip] - elen[vi]
        ok = delta > 1e-15 and _move_ok(chart, vi, nx, ny)
        if ok:
            chart[vi, 0] = nx
            chart[vi, 1] = ny
            elen[ip] = e1
            elen[vi] = e2
            accepts += 1
        else:
            rejects += 1
            if rejects % halve_every == 0:
                scale *= 0.5
    total = 0.0
    for i in range(n):
        total += elen[i]
    return total, accepts, rejects

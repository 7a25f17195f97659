"""Constructive perimeter certificates for concrete simple odd n-gons.

Given a simple odd n-gon P in a convex body C, the certificate pipeline
normalizes P so a longest edge spans the canonical position, scans the
cyclic sequence of successive height differences for a monotone vertex
triple (guaranteed to exist for odd n by a parity argument), and then scores
all ten triangles over the five distinguished vertices {p, q, a, b, c},
picking the tightest one that dominates the perimeter.  The winning triangle
is pushed to the boundary of C without shrinking any side, which preserves
domination.

The module also exposes numeric verifiers for the key inequalities behind
the case analysis (a Euclidean distance inequality, and the sign of a
directional-derivative quantity in both metrics), plus the hyperbolic
distance-domination dichotomy used when the far vertex stays inside the
strip of the longest edge.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

from .metric_plane import (
    GeometryError,
    Mat3,
    Metric,
    Point,
    apply_isometry,
    distance,
    euclidean_point,
    geodesic_through,
    hyperbolic_rotation,
    hyperbolic_translation,
    in_convex_hull,
    lorentz_inverse,
    mat_mul,
    orthogonal_project,
    poincare_point,
    require_same_metric,
    signed_line_coordinate,
)
from .convex_body import ConvexBody
from .simple_polygon import ClosedPolygon, closed_polygon, contained_in, is_simple, perimeter
from .triangle_bound import InscribedTriangle, inscribe_push, triangle_score

#: label order used for triples and trace output
_LABELS = ("p", "q", "a", "b", "c")


class DomainError(GeometryError):
    """A verifier was called outside its precondition domain."""


class CertificateSearchError(GeometryError):
    """No candidate triple dominates the perimeter (numerical pathology)."""

    def __init__(self, message: str, scores: Optional[List[float]] = None):
        super().__init__(message)
        self.scores = scores or []


# ---------------------------------------------------------------------------
# Normalization
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Normalization:
    """Isometry (plus scale in E^2) taking a longest edge to canonical
    position: first vertex at the origin, second straight "up"."""

    metric: Metric
    longest_edge_index: int
    scale: Optional[float]          # E^2 only: the longest edge length
    rho: Optional[float]            # H^2 only: dist(p, q)
    rotation: Optional[Tuple[float, float]]   # E^2: (cos, sin) of the rotation
    translation: Optional[Tuple[float, float]]  # E^2: subtracted base vertex
    matrix: Optional[Mat3]          # H^2: Lorentz transform
    matrix_inv: Optional[Mat3]

    def forward(self, p: Point) -> Point:
        if self.metric is Metric.EUCLIDEAN:
            x = p.data[0] - self.translation[0]
            y = p.data[1] - self.translation[1]
            c, s = self.rotation
            xr = (c * x - s * y) / self.scale
            yr = (s * x + c * y) / self.scale
            return euclidean_point(xr, yr)
        return apply_isometry(self.matrix, p)

    def inverse(self, p: Point) -> Point:
        if self.metric is Metric.EUCLIDEAN:
            c, s = self.rotation
            x = p.data[0] * self.scale
            y = p.data[1] * self.scale
            xi = c * x + s * y + self.translation[0]
            yi = -s * x + c * y + self.translation[1]
            return euclidean_point(xi, yi)
        return apply_isometry(self.matrix_inv, p)


def normalize(P: ClosedPolygon) -> Tuple[ClosedPolygon, Normalization]:
    """Relabel and move P so that a longest edge runs from the origin to the
    canonical unit position.

    E^2: translate, rotate and scale by the longest edge length so the edge
    becomes (0,0) -> (0,1).  H^2: an isometry takes the first endpoint to the
    model origin and the second onto the upward geodesic ray; there is no
    scaling, and rho = dist(p, q) is recorded instead.
    """
    if P.n % 2 == 0:
        raise GeometryError("normalization requires odd n")
    check = is_simple(P)
    if not check.simple:
        raise GeometryError("polygon is not simple: edges %s" % (check.witness,))
    n = P.n
    lens = [distance(P.vertices[i], P.vertices[(i + 1) % n]) for i in range(n)]
    m = max(range(n), key=lambda i: (lens[i], -i))
    rot = [P.vertices[(m + i) % n] for i in range(n)]
    if P.metric is Metric.EUCLIDEAN:
        ax, ay = rot[0].data
        bx, by = rot[1].data
        ell = lens[m]
        phi = math.atan2(by - ay, bx - ax)
        ang = math.pi / 2.0 - phi
        c, s = math.cos(ang), math.sin(ang)
        norm = Normalization(P.metric, m, ell, None, (c, s), (ax, ay), None, None)
    else:
        B = lorentz_inverse(hyperbolic_translation(rot[0]))
        q1 = apply_isometry(B, rot[1])
        phi = math.atan2(q1.data[2], q1.data[1])
        R = hyperbolic_rotation(math.pi / 2.0 - phi)
        M = mat_mul(R, B)
        norm = Normalization(P.metric, m, None, lens[m], None, None,
                             M, lorentz_inverse(M))
    out = closed_polygon([norm.forward(v) for v in rot])
    return out, norm


# ---------------------------------------------------------------------------
# Monotone triple and candidate enumeration
# ---------------------------------------------------------------------------

def find_monotone_triple(theta: Sequence[float]) -> int:
    """Smallest j >= 1 such that zeta_{j-1} and zeta_j (cyclic successive
    differences of theta) are both nonnegative or both nonpositive.

    A cyclic sign sequence of odd length cannot strictly alternate, so the
    index exists whenever len(theta) is odd; even lengths are rejected.
    """
    n = len(theta)
    if n % 2 == 0:
        raise GeometryError("parity argument requires odd n")
    zeta = [theta[(i + 1) % n] - theta[i] for i in range(n)]
    for j in range(1, n + 1):
        if zeta[j - 1] * zeta[j % n] >= 0.0:
            return j
    raise GeometryError("no monotone triple found in odd sequence")  # unreachable


@dataclass(frozen=True)
class Candidate:
    labels: Tuple[str, str, str]
    sides: Tuple[float, float, float]
    score: float


def candidate_triples(p: Point, q: Point, a: Point, b: Point, c: Point,
                      n: int) -> List[Candidate]:
    """All ten triangles over {p, q, a, b, c}, scored, ascending by score."""
    require_same_metric(p, q, a, b, c)
    pts = dict(zip(_LABELS, (p, q, a, b, c)))
    out = []
    for i in range(5):
        for j in range(i + 1, 5):
            for k in range(j + 1, 5):
                labels = (_LABELS[i], _LABELS[j], _LABELS[k])
                x, y, z = pts[labels[0]], pts[labels[1]], pts[labels[2]]
                raw = (distance(x, y), distance(y, z), distance(x, z))
                sides = tuple(sorted(raw, reverse=True))
                out.append(Candidate(labels, sides, triangle_score(n, sides)))
    out.sort(key=lambda cand: (cand.score, cand.labels))
    return out


# ---------------------------------------------------------------------------
# Certification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CertificateTrace:
    longest_edge_index: int
    scale: Optional[float]
    rho: Optional[float]
    zeta: Tuple[float, ...]
    j: int
    flipped: bool
    labeled: Dict[str, Point]      # normalized-frame positions of p,q,a,b,c
    case: str
    triple: Tuple[str, str, str]
    candidate_scores: Tuple[float, ...]


@dataclass(frozen=True)
class TriangleCertificate:
    triangle: InscribedTriangle
    bound: float
    perimeter: float
    slack: float
    trace: CertificateTrace


def certify(P: ClosedPolygon, C: ConvexBody) -> TriangleCertificate:
    """Produce an inscribed triangle whose (n-2, 1, 1) weighted perimeter
    dominates perim P.

    The search enumerates the ten vertex triples over {p, q, a, b, c} rather
    than walking the case tree: the designated triangle of every case is
    among the ten, so enumeration is complete, immune to borderline case
    misclassification, and yields the tightest certificate.  The winning
    triple (taken from the original, untransformed vertices) is pushed to
    bd C, which cannot shrink any side.
    """
    if P.metric is not C.metric:
        raise GeometryError("metric mismatch")
    n = P.n
    if n % 2 == 0:
        raise GeometryError("certificates require odd n")
    check = is_simple(P)
    if not check.simple:
        raise GeometryError(
            "not simple: edges %d and %d intersect" % check.witness)
    if not contained_in(P, C):
        raise GeometryError("polygon not contained in body")

    Pn, norm = normalize(P)
    axis = geodesic_through(Pn.vertices[0], Pn.vertices[1])
    theta = [signed_line_coordinate(v, axis) for v in Pn.vertices]
    j = find_monotone_triple(theta)
    idx = {"p": 0, "q": 1, "a": (j - 1) % n, "b": j % n, "c": (j + 1) % n}
    flipped = theta[idx["a"]] > theta[idx["c"]]
    if flipped:
        idx["a"], idx["c"] = idx["c"], idx["a"]
    labeled_norm = {lab: Pn.vertices[i] for lab, i in idx.items()}
    perim_norm = perimeter(Pn)
    cands = candidate_triples(labeled_norm["p"], labeled_norm["q"],
                              labeled_norm["a"], labeled_norm["b"],
                              labeled_norm["c"], n)
    winner = None
    for cand in cands:
        if cand.score >= perim_norm - 1e-9:
            winner = cand
            break
    if winner is None:
        raise CertificateSearchError(
            "certificate search failed", [cand.score for cand in cands])

    # Realize the winner on the original vertices (exact, no roundtrip).
    orig_idx = [(norm.longest_edge_index + idx[lab]) % n for lab in winner.labels]
    tri_points = [P.vertices[i] for i in orig_idx]
    pushed = inscribe_push(C, tri_points)
    per = perimeter(P)
    bound = triangle_score(n, pushed.sides)
    slack = bound - per
    if slack < -1e-9 * max(1.0, per):
        raise CertificateSearchError(
            "pushed certificate lost domination", [cand.score for cand in cands])
    zeta = tuple(theta[(i + 1) % n] - theta[i] for i in range(n))
    trace = CertificateTrace(
        longest_edge_index=norm.longest_edge_index,
        scale=norm.scale,
        rho=norm.rho,
        zeta=zeta,
        j=j,
        flipped=flipped,
        labeled=labeled_norm,
        case="".join(winner.labels),
        triple=winner.labels,
        candidate_scores=tuple(cand.score for cand in cands),
    )
    return TriangleCertificate(pushed, bound, per, slack, trace)


# ---------------------------------------------------------------------------
# Numeric verifiers for the proof's inequalities
# ---------------------------------------------------------------------------

def eu_inequality_gap(theta_a: float, omega_a: float,
                      theta_c: float, omega_c: float) -> float:
    """RHS minus LHS of the Euclidean distance inequality

        5 + dist(a, p_a) + dist(p_a, c) <= 5 dist(p, c) + dist(a, p) + dist(a, c)

    with p = (0,0), p_a = (0, theta_a), a = (omega_a, theta_a),
    c = (omega_c, theta_c); nonnegative on the precondition domain."""
    if not 0.0 <= theta_a <= 0.5:
        raise DomainError("theta_a must be in [0, 1/2]")
    if not theta_c > 1.0:
        raise DomainError("theta_c must exceed 1")
    if omega_a < 0.0 or omega_c < 0.0:
        raise DomainError("omega_a and omega_c must be nonnegative")
    if omega_c < omega_a / 2.0:
        raise DomainError("omega_c must be at least omega_a / 2")
    dac = math.hypot(omega_c - omega_a, theta_c - theta_a)
    if not dac < 1.0:
        raise DomainError("dist(a, c) must be below 1")
    lhs = 5.0 + omega_a + math.hypot(omega_c, theta_c - theta_a)
    rhs = (5.0 * math.hypot(omega_c, theta_c)
           + math.hypot(omega_a, theta_a) + dac)
    return rhs - lhs


def eu_derivative_I(theta_a: float, theta_c: float, omega_c: float) -> float:
    """The Euclidean derivative quantity

        I = 5 omega_c / sqrt(omega_c^2 + theta_c^2)
            - 2 omega_c / sqrt(omega_c^2 + (theta_c - theta_a)^2),

    nonnegative whenever 0 <= theta_a <= theta_c / 2."""
    if not theta_c > 0.0:
        raise DomainError("theta_c must be positive")
    if not 0.0 <= theta_a <= theta_c / 2.0:
        raise DomainError("theta_a must be in [0, theta_c / 2]")
    if omega_c < 0.0:
        raise DomainError("omega_c must be nonnegative")
    return (5.0 * omega_c / math.hypot(omega_c, theta_c)
            - 2.0 * omega_c / math.hypot(omega_c, theta_c - theta_a))


def hy_derivative_I(theta_a: float, theta_c: float, omega_c: float) -> float:
    """The hyperbolic derivative quantity

        I = 5 cosh(theta_c) sinh(omega_c) / sqrt(cosh^2(theta_c) cosh^2(omega_c) - 1)
          - 2 cosh(theta_c - theta_a) sinh(omega_c) / sqrt(cosh^2(theta_c - theta_a) cosh^2(omega_c) - 1),

    where theta_a = dist(p,a), theta_c = dist(p,c), omega_c = dist(c, p_c).
    Nonnegative on the domain; at omega_c = 0 the defined limit 0 is returned
    (no division by zero can occur)."""
    if not theta_c > 0.0:
        raise DomainError("theta_c must be positive")
    if not 0.0 <= theta_a <= theta_c / 2.0:
        raise DomainError("theta_a must be in [0, theta_c / 2]")
    if omega_c < 0.0:
        raise DomainError("omega_c must be nonnegative")
    if omega_c == 0.0:
        return 0.0
    sw = math.sinh(omega_c)
    cw = math.cosh(omega_c)
    y = math.cosh(theta_c)
    z = math.cosh(theta_c - theta_a)
    return (5.0 * y * sw / math.sqrt(y * y * cw * cw - 1.0)
            - 2.0 * z * sw / math.sqrt(z * z * cw * cw - 1.0))


class Case1Domination(Enum):
    A_VIA_P = "a_via_p"
    C_VIA_Q = "c_via_q"
    NEITHER = "neither"


def hy_case1_domination(p: Point, q: Point, a: Point, b: Point,
                        c: Point) -> Case1Domination:
    """The hyperbolic in-strip dichotomy: dist(a,b) <= dist(p,b) or
    dist(b,c) <= dist(b,q).

    Hypotheses are verified first (errors name the failed one): hyperbolic
    metric, dist(a,c) < dist(p,q), a/b/c in one closed half-plane of L(p,q)
    and inside the strip over [p,q] with ordered projection feet, and b
    outside conv{p_a, p_c, a, c}.  A NEITHER result would contradict the
    dichotomy and flags a hypothesis-check bug.
    """
    metric = require_same_metric(p, q, a, b, c)
    if metric is not Metric.HYPERBOLIC:
        raise DomainError("hypothesis failed: metric must be hyperbolic")
    rho = distance(p, q)
    if not distance(a, c) < rho:
        raise DomainError("hypothesis failed: dist(a,c) must be below dist(p,q)")
    L = geodesic_through(p, q)
    pc_chart = [p.chart, q.chart]
    (px, py), (qx, qy) = pc_chart
    sides = []
    for x in (a, b, c):
        xx, xy = x.chart
        sides.append((qx - px) * (xy - py) - (qy - py) * (xx - px))
    if not (all(s >= -1e-12 for s in sides) or all(s <= 1e-12 for s in sides)):
        raise DomainError("hypothesis failed: a, b, c must share a closed half-plane of L(p,q)")
    t = {lab: signed_line_coordinate(x, L) for lab, x in
         (("a", a), ("b", b), ("c", c))}
    if not -1e-9 <= t["c"] <= rho + 1e-9:
        raise DomainError("hypothesis failed: c must lie in the strip over [p,q]")
    if not (-1e-9 <= t["a"] and t["b"] <= rho + 1e-9 and t["a"] <= t["b"] <= t["c"]):
        raise DomainError("hypothesis failed: projection feet must be ordered p..a..b..c..q")
    p_a = orthogonal_project(a, L)
    p_c = orthogonal_project(c, L)
    if in_convex_hull(b, [p_a, p_c, a, c]):
        raise DomainError("hypothesis failed: b must lie outside conv{p_a, p_c, a, c}")
    if distance(a, b) <= distance(p, b) + 1e-12:
        return Case1Domination.A_VIA_P
    if distance(b, c) <= distance(b, q) + 1e-12:
        return Case1Domination.C_VIA_Q
    return Case1Domination.NEITHER

"""Perimeter bounds for simple polygons contained in plane convex bodies.

For odd n, the supremum of perimeters of simple n-gons contained in a convex
body C (Euclidean or hyperbolic) equals the maximum of
(n-2)*alpha + beta + gamma over triangles inscribed in C with sorted side
lengths alpha >= beta >= gamma; for even n it is the trivial bound
n * diam C.  This package computes the bound, certifies concrete polygons
against it, constructs near-extremal polygons, and stress-tests the claim by
randomized search.
"""

from .metric_plane import (
    GeometryError,
    Metric,
    Point,
    Geodesic,
    Segment,
    Ray,
    RaySense,
    Hypercycle,
    Side,
    IntersectionKind,
    angle_at,
    bisector_separates,
    distance,
    euclidean_point,
    geodesic_through,
    hypercycle_orthogonal_through,
    hypercycle_with_reference_line,
    in_convex_hull,
    klein_point,
    orthogonal_project,
    poincare_point,
    ray_segment_intersects,
    segment_intersection,
)
from .convex_body import (
    BoundaryPoint,
    ConvexBody,
    boundary_point,
    contains,
    diameter,
    disk_body,
    polygon_body,
    ray_exit,
)
from .simple_polygon import (
    ClosedPolygon,
    closed_polygon,
    contained_in,
    is_simple,
    perimeter,
    uncross,
)
from .triangle_bound import (
    BoundResult,
    InscribedTriangle,
    bound_for,
    disk_bound_1d,
    inscribe_push,
    optimize_bound,
    triangle_score,
)
from .certificate import (
    Case1Domination,
    CertificateSearchError,
    TriangleCertificate,
    candidate_triples,
    certify,
    eu_derivative_I,
    eu_inequality_gap,
    find_monotone_triple,
    hy_case1_domination,
    hy_derivative_I,
    normalize,
)

__version__ = "0.1.0"

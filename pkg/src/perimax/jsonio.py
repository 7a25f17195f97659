"""JSON interchange: bodies, polygons, bound results, certificates, reports.

Numbers are printed with 17 significant digits (round-trip exact for IEEE
doubles) and hyperbolic points always use Poincare-disk coordinates, so
fixed inputs give byte-identical documents.
"""

from __future__ import annotations

import json
import math
from typing import Any, List, Optional, Sequence

from .metric_plane import (
    GeometryError,
    Metric,
    Point,
    euclidean_point,
    poincare_point,
)
from .convex_body import ConvexBody, disk_body, polygon_body
from .simple_polygon import ClosedPolygon, closed_polygon
from .triangle_bound import BoundResult, InscribedTriangle
from .certificate import TriangleCertificate
from .search_harness import SearchReport


class FormatError(ValueError):
    pass


def format_float(x: float) -> str:
    if math.isnan(x) or math.isinf(x):
        raise FormatError("non-finite number in JSON output")
    return format(float(x), ".17g")


def dumps(obj: Any) -> str:
    """Deterministic JSON with 17-significant-digit floats."""
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, float):
        return format_float(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        items = ("%s: %s" % (json.dumps(str(k)), dumps(v)) for k, v in obj.items())
        return "{" + ", ".join(items) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(dumps(v) for v in obj) + "]"
    raise FormatError("unsupported type in JSON output: %r" % type(obj))


def point_to_pair(p: Point) -> List[float]:
    return [float(p.coords[0]), float(p.coords[1])]


def _point_from_pair(metric: Metric, pair) -> Point:
    if not (isinstance(pair, (list, tuple)) and len(pair) == 2):
        raise FormatError("point must be a [x, y] pair")
    x, y = float(pair[0]), float(pair[1])
    if metric is Metric.EUCLIDEAN:
        return euclidean_point(x, y)
    try:
        return poincare_point(x, y)
    except GeometryError as exc:
        raise FormatError(str(exc)) from None


def _metric_from_name(name) -> Metric:
    if name == "euclidean":
        return Metric.EUCLIDEAN
    if name == "hyperbolic":
        return Metric.HYPERBOLIC
    raise FormatError("metric must be 'euclidean' or 'hyperbolic'")


def body_to_json(C: ConvexBody) -> dict:
    if C.is_disk:
        shape = {"type": "disk",
                 "center": point_to_pair(C.shape.center),
                 "radius": float(C.shape.radius)}
    else:
        shape = {"type": "polygon",
                 "vertices": [point_to_pair(v) for v in C.shape.vertices]}
    return {"metric": C.metric.value, "shape": shape}


def body_from_json(doc) -> ConvexBody:
    if not isinstance(doc, dict):
        raise FormatError("body document must be a JSON object")
    metric = _metric_from_name(doc.get("metric"))
    shape = doc.get("shape")
    if not isinstance(shape, dict):
        raise FormatError("body needs a 'shape' object")
    kind = shape.get("type")
    try:
        if kind == "disk":
            center = _point_from_pair(metric, shape.get("center"))
            return disk_body(center, float(shape.get("radius")))
        if kind == "polygon":
            verts = shape.get("vertices")
            if not isinstance(verts, list):
                raise FormatError("polygon shape needs a 'vertices' list")
            return polygon_body([_point_from_pair(metric, v) for v in verts])
    except (GeometryError, TypeError, ValueError) as exc:
        raise FormatError("invalid body: %s" % exc) from None
    raise FormatError("shape type must be 'disk' or 'polygon'")


def polygon_to_json(P: ClosedPolygon) -> dict:
    return {"metric": P.metric.value,
            "vertices": [point_to_pair(v) for v in P.vertices]}


def polygon_from_json(doc) -> ClosedPolygon:
    if not isinstance(doc, dict):
        raise FormatError("polygon document must be a JSON object")
    metric = _metric_from_name(doc.get("metric"))
    verts = doc.get("vertices")
    if not isinstance(verts, list):
        raise FormatError("polygon needs a 'vertices' list")
    try:
        return closed_polygon([_point_from_pair(metric, v) for v in verts])
    except GeometryError as exc:
        raise FormatError("invalid polygon: %s" % exc) from None


def triangle_to_json(tri: InscribedTriangle) -> list:
    return [point_to_pair(p) for p in tri.vertex_points]


def bound_result_to_json(br: BoundResult) -> dict:
    return {"value": float(br.value),
            "triangle": triangle_to_json(br.triangle),
            "sides": [float(s) for s in br.triangle.sides],
            "diagnostics": {k: float(v) for k, v in br.diagnostics.items()}}


def certificate_to_json(cert: TriangleCertificate) -> dict:
    return {"bound": float(cert.bound),
            "perimeter": float(cert.perimeter),
            "slack": float(cert.slack),
            "triangle": triangle_to_json(cert.triangle),
            "trace": {"j": int(cert.trace.j),
                      "zeta": [float(z) for z in cert.trace.zeta],
                      "case": cert.trace.case,
                      "triple": list(cert.trace.triple)}}


def search_report_to_json(rep: SearchReport) -> dict:
    return {"body": body_to_json(rep.body),
            "n": int(rep.n),
            "bound": float(rep.bound),
            "trials": int(rep.trials),
            "best_perimeter": None if rep.best_perimeter is None else float(rep.best_perimeter),
            "best_polygon": None if rep.best_polygon is None else polygon_to_json(rep.best_polygon),
            "max_slack_violation": None if rep.max_slack_violation is None else float(rep.max_slack_violation),
            "seed": int(rep.seed)}


def load_json_file(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise FormatError("cannot read %s: %s" % (path, exc)) from None
    except json.JSONDecodeError as exc:
        raise FormatError("invalid JSON in %s: %s" % (path, exc)) from None

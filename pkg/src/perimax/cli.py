"""Command-line front end.

Subcommands: bound, certify, search, construct, check-paper, render.
Every subcommand run with --json prints a single JSON document on stdout and
human-readable text only on stderr.  Exit codes are a stable contract:
0 pass, 2 usage or parse error, 3 input validation, 4 certification failure,
5 property violation.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from .metric_plane import GeometryError
from . import jsonio
from .jsonio import FormatError, dumps, format_float
from .convex_body import diameter
from .simple_polygon import contained_in, is_simple, perimeter
from .certificate import CertificateSearchError, certify

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_VALIDATION = 3
EXIT_CERT_FAILURE = 4
EXIT_VIOLATION = 5


def _err(msg: str) -> None:
    print(msg, file=sys.stderr)


def _emit(doc, as_json: bool, plain_lines) -> None:
    if as_json:
        print(dumps(doc))
        for line in plain_lines:
            _err(line)
    else:
        for line in plain_lines:
            print(line)


def cmd_bound(args) -> int:
    try:
        body = jsonio.body_from_json(jsonio.load_json_file(args.body))
    except FormatError as exc:
        _err(str(exc))
        return EXIT_USAGE
    n = args.n
    if n < 3:
        _err("n must be at least 3")
        return EXIT_USAGE
    if n % 2 == 0:
        value = n * diameter(body)
        doc = {"kind": "even-n diameter bound", "n": n,
               "diameter": diameter(body), "value": value}
        _emit(doc, args.json, ["even-n diameter bound: %s" % format_float(value)])
        return EXIT_OK
    from .triangle_bound import bound_for
    br = bound_for(body, n, grid=args.grid or 0)
    doc = {"kind": "triangle bound", "n": n}
    doc.update(jsonio.bound_result_to_json(br))
    lines = ["bound = %s" % format_float(br.value),
             "sides = %s" % " ".join(format_float(s) for s in br.triangle.sides)]
    _emit(doc, args.json, lines)
    return EXIT_OK


def cmd_certify(args) -> int:
    try:
        body = jsonio.body_from_json(jsonio.load_json_file(args.body))
        poly = jsonio.polygon_from_json(jsonio.load_json_file(args.polygon))
    except FormatError as exc:
        _err(str(exc))
        return EXIT_USAGE
    if poly.metric is not body.metric:
        _err("metric mismatch between polygon and body")
        return EXIT_VALIDATION
    check = is_simple(poly)
    if not check.simple:
        _err("not simple: edges %d and %d intersect" % check.witness)
        return EXIT_VALIDATION
    if poly.n % 2 == 0:
        _err("polygon must have an odd number of vertices (n=%d)" % poly.n)
        return EXIT_VALIDATION
    if not contained_in(poly, body):
        _err("polygon not contained in body")
        return EXIT_VALIDATION
    try:
        cert = certify(poly, body)
    except CertificateSearchError as exc:
        _err("certification failed: %s (scores: %s)"
             % (exc, " ".join(format_float(s) for s in exc.scores)))
        return EXIT_CERT_FAILURE
    doc = jsonio.certificate_to_json(cert)
    lines = ["bound = %s" % format_float(cert.bound),
             "perimeter = %s" % format_float(cert.perimeter),
             "slack = %s" % format_float(cert.slack)]
    _emit(doc, args.json, lines)
    return EXIT_OK


def cmd_search(args) -> int:
    try:
        body = jsonio.body_from_json(jsonio.load_json_file(args.body))
    except FormatError as exc:
        _err(str(exc))
        return EXIT_USAGE
    if args.n < 3 or args.n % 2 == 0:
        _err("search is defined for odd n >= 3")
        return EXIT_USAGE
    from .search_harness import ViolationError, verify_no_counterexample
    try:
        rep = verify_no_counterexample(body, args.n, args.trials, args.steps,
                                       args.seed)
    except ViolationError as exc:
        doc = {"violation": True,
               "message": str(exc),
               "polygon": jsonio.polygon_to_json(exc.polygon),
               "perimeter": perimeter(exc.polygon)}
        print(dumps(doc))
        _err(str(exc))
        return EXIT_VIOLATION
    print(dumps(jsonio.search_report_to_json(rep)))
    if rep.best_perimeter is not None:
        _err("best perimeter %s vs bound %s"
             % (format_float(rep.best_perimeter), format_float(rep.bound)))
    return EXIT_OK


def cmd_check_paper(args) -> int:
    if args.samples < 1:
        _err("samples must be at least 1")
        return EXIT_USAGE
    from .inequality_sweeps import run_sweeps
    results = run_sweeps(args.samples, args.seed)
    checks = {}
    for r in results:
        entry = {"samples": r.samples, "failures": r.failures}
        if r.min_margin is not None:
            entry["min_margin"] = r.min_margin
        checks[r.name] = entry
        _err("%s: min_margin=%s failures=%d"
             % (r.name,
                "n/a" if r.min_margin is None else format_float(r.min_margin),
                r.failures))
    ok = all(r.passed for r in results)
    doc = {"samples": args.samples, "seed": args.seed, "checks": checks,
           "pass": ok}
    if not ok:
        worst = next(r for r in results if not r.passed)
        doc["offending"] = {"check": worst.name,
                            "sample": list(worst.worst_sample or ())}
        print(dumps(doc))
        return EXIT_VIOLATION
    print(dumps(doc))
    return EXIT_OK


def cmd_construct(args) -> int:
    try:
        body = jsonio.body_from_json(jsonio.load_json_file(args.body))
    except FormatError as exc:
        _err(str(exc))
        return EXIT_USAGE
    if args.n < 3:
        _err("n must be at least 3")
        return EXIT_USAGE
    from .search_harness import ConstructionError, near_extremal_even, near_extremal_odd
    try:
        if args.n % 2 == 1:
            from .triangle_bound import bound_for
            target = bound_for(body, args.n).value
            P = near_extremal_odd(body, args.n, args.eps)
        else:
            target = args.n * diameter(body)
            P = near_extremal_even(body, args.n, args.eps)
    except ConstructionError as exc:
        _err(str(exc))
        return EXIT_VALIDATION
    per = perimeter(P)
    doc = {"n": args.n, "eps": args.eps, "bound": target, "perimeter": per,
           "gap": target - per, "polygon": jsonio.polygon_to_json(P)}
    lines = ["perimeter = %s (bound %s, gap %s)"
             % (format_float(per), format_float(target),
                format_float(target - per))]
    _emit(doc, args.json, lines)
    return EXIT_OK


def cmd_render(args) -> int:
    try:
        body = jsonio.body_from_json(jsonio.load_json_file(args.body))
        poly = None
        tri = None
        if args.polygon:
            poly = jsonio.polygon_from_json(jsonio.load_json_file(args.polygon))
        if args.triangle:
            doc = jsonio.load_json_file(args.triangle)
            if isinstance(doc, dict) and "triangle" in doc:
                doc = {"metric": body.metric.value, "vertices": doc["triangle"]}
            tri = jsonio.polygon_from_json(doc)
            if tri.n != 3:
                _err("triangle file must contain exactly 3 vertices")
                return EXIT_VALIDATION
    except FormatError as exc:
        _err(str(exc))
        return EXIT_USAGE
    from .render import render_svg
    svg = render_svg(body, poly, tri.vertices if tri else None)
    try:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(svg)
    except OSError as exc:
        _err("cannot write %s: %s" % (args.out, exc))
        return EXIT_USAGE
    _err("wrote %s" % args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="perimax",
        description="Perimeter bounds for simple polygons in plane convex "
                    "bodies (Euclidean and hyperbolic).")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bound", help="compute the perimeter bound for a body")
    p.add_argument("--body", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--grid", type=int, default=0)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--json", action="store_true")
    g.add_argument("--plain", dest="json", action="store_false")
    p.set_defaults(json=False, func=cmd_bound)

    p = sub.add_parser("certify", help="certify a simple odd n-gon")
    p.add_argument("--body", required=True)
    p.add_argument("--polygon", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("search", help="randomized no-counterexample campaign")
    p.add_argument("--body", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("construct", help="emit a near-extremal polygon")
    p.add_argument("--body", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--eps", type=float, default=1e-4)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("check-paper",
                       help="randomized sweeps of the core inequality claims")
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.set_defaults(func=cmd_check_paper)

    p = sub.add_parser("render", help="render body/polygon/triangle to SVG")
    p.add_argument("--body", required=True)
    p.add_argument("--polygon", default=None)
    p.add_argument("--triangle", default=None)
    p.add_argument("-o", "--out", required=True)
    p.set_defaults(func=cmd_render)

    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except GeometryError as exc:
        _err(str(exc))
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())

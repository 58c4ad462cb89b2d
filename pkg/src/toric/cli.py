"""Command line front end.

Subcommands: ``trace`` (write a section document as json/svg/csv),
``classify`` (one-line class report), ``bridge`` (cone-cylinder equivalence
check) and ``serve`` (HTTP service for the browser explorer).

Angles are taken in degrees here and converted to radians at this boundary.
Exit codes: 0 success, 1 verification failure, 2 validation or usage error.
"""

from __future__ import annotations

import argparse
import math
import os
import sys

from .bridge import BridgeUndefinedError, bridge_geometry, verify_bridge_equivalence
from .classify import classify
from .document import (
    MAX_RESOLUTION,
    build_section_document,
    to_csv,
    to_json,
    to_svg,
)
from .geometry import ParameterError
from .section import SectionProblem
from .trace import embed_section, trace_section

EXIT_OK = 0
EXIT_VERIFICATION = 1
EXIT_VALIDATION = 2

BRIDGE_RESIDUAL_LIMIT = 1e-6
DEFAULT_PORT = int(os.environ.get("TORIC_PORT", "8000"))


def _add_shape_args(p: argparse.ArgumentParser, resolution_default=512):
    p.add_argument("--R", type=float, required=True, help="major radius")
    p.add_argument("--r", type=float, required=True, help="minor radius")
    p.add_argument("--rho", type=float, default=0.0,
                   help="plane distance from the torus center (default 0)")
    p.add_argument("--alpha", type=float, default=0.0,
                   help="plane normal azimuth in degrees (default 0)")
    p.add_argument("--phi", type=float, default=0.0,
                   help="plane normal elevation in degrees (default 0)")
    p.add_argument("--resolution", type=int, default=resolution_default,
                   help=f"grid cells per axis, 16..{MAX_RESOLUTION} "
                        f"(default {resolution_default})")
    p.add_argument("--tol", type=float, default=1e-3,
                   help="classification tolerance (default 1e-3)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="toric",
        description="Trace, classify and export torus-plane intersection curves.")
    sub = ap.add_subparsers(dest="command", required=True)

    pt = sub.add_parser("trace", help="trace a section and write a document")
    _add_shape_args(pt)
    pt.add_argument("--format", choices=("json", "svg", "csv"), default="json")
    pt.add_argument("--output", help="output file (default stdout)")
    pt.add_argument("--axes", action="store_true", help="draw axes in SVG output")

    pc = sub.add_parser("classify", help="print the section class")
    _add_shape_args(pc)

    pb = sub.add_parser("bridge", help="verify the cone-cylinder equivalence")
    _add_shape_args(pb)
    pb.add_argument("--samples", type=int, default=4096,
                    help="circle sweep samples (default 4096)")

    ps = sub.add_parser("serve", help="run the HTTP service")
    ps.add_argument("--port", type=int, default=DEFAULT_PORT,
                    help="port (default $TORIC_PORT or 8000)")
    ps.add_argument("--host", default="127.0.0.1")
    ps.add_argument("--ui-dir", default=None,
                    help="directory with the built explorer UI")
    return ap


def _problem(args) -> SectionProblem:
    return SectionProblem.from_values(
        args.R, args.r, args.rho,
        phi=math.radians(args.phi), alpha=math.radians(args.alpha))


def cmd_trace(args) -> int:
    if args.format == "json":
        text = to_json(build_section_document(
            args.R, args.r, rho=args.rho, alpha_deg=args.alpha,
            phi_deg=args.phi, resolution=args.resolution, tol=args.tol))
    else:
        from .document import validate_request
        validate_request(args.R, args.r, args.rho, args.alpha, args.phi,
                         args.resolution)
        sp = _problem(args)
        curve = embed_section(trace_section(sp, args.resolution), sp)
        text = to_svg(curve, axes=args.axes) if args.format == "svg" else to_csv(curve)
    if args.output:
        with open(args.output, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_classify(args) -> int:
    from .document import validate_request
    validate_request(args.R, args.r, args.rho, args.alpha, args.phi,
                     args.resolution)
    cls = classify(_problem(args), tol=args.tol)
    print(_class_report(cls))
    return EXIT_OK


def _class_report(cls) -> str:
    d = cls.detail
    if cls.tag == "Villarceau":
        return f"Villarceau (plane angle {d['angle_deg']:.3f}\N{DEGREE SIGN})"
    if cls.tag == "HorizontalCircles":
        radii = ", ".join(f"{x:.3f}" for x in d["radii"]) or "none"
        return f"HorizontalCircles (radii {radii})"
    if cls.tag in ("CassiniOval", "BernoulliLemniscate"):
        return f"{cls.tag} (b\N{SUPERSCRIPT TWO}={d['b_squared']:.6g}, c={d['c']:.6g})"
    if cls.tag == "HippopedeOfProclus":
        return f"HippopedeOfProclus (rho = R - r = {d['inner_radius']:.6g})"
    return cls.tag


def cmd_bridge(args) -> int:
    from .document import validate_request
    validate_request(args.R, args.r, args.rho, args.alpha, args.phi,
                     args.resolution)
    if args.samples < 8:
        raise ParameterError(f"samples >= 8 violated (samples={args.samples})")
    sp = _problem(args)
    geo = bridge_geometry(sp)  # raises BridgeUndefinedError on horizontal planes
    residual = verify_bridge_equivalence(sp, args.samples)
    (c1, c2) = geo.circle_centers_zy
    vertex = ("at infinity" if geo.vertex_at_infinity
              else f"({geo.cone_vertex[0]:.6g}, {geo.cone_vertex[1]:.6g}, "
                   f"{geo.cone_vertex[2]:.6g})")
    print(f"circles (z, y): centers ({c1[0]:.6g}, {c1[1]:.6g}), "
          f"({c2[0]:.6g}, {c2[1]:.6g}), radius {geo.circle_radius:.6g}")
    print(f"cone vertex: {vertex}, k = cos(phi) = {geo.k:.6g}")
    print(f"max |section residual| over {args.samples} samples: {residual:.3e}")
    if residual > BRIDGE_RESIDUAL_LIMIT:
        print("verification FAILED", file=sys.stderr)
        return EXIT_VERIFICATION
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app
    app = create_app(ui_dir=args.ui_dir)
    uvicorn.run(app, host=args.host, port=args.port)
    return EXIT_OK


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        # argparse exits 2 on usage errors and 0 on --help
        return int(e.code or 0)
    try:
        if args.command == "trace":
            return cmd_trace(args)
        if args.command == "classify":
            return cmd_classify(args)
        if args.command == "bridge":
            return cmd_bridge(args)
        if args.command == "serve":
            return cmd_serve(args)
    except (ParameterError, BridgeUndefinedError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_VERIFICATION
    return EXIT_VALIDATION


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()

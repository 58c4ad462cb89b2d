"""Canonical section document and its serializations (JSON, SVG, CSV).

The JSON document (schema version 1) is the single wire format shared by the
CLI, the HTTP service and the browser explorer.  Serialization is fully
deterministic: fixed field order, compact separators, floats rendered with 17
significant digits so values round-trip bit exactly.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Any

import numpy as np

from .bridge import BridgeUndefinedError, bridge_geometry, bridge_sweep
from .classify import SectionClass, classify
from .geometry import ParameterError
from .section import SectionProblem, section_coeffs
from .trace import SectionCurve, embed_section, trace_section

SCHEMA_VERSION = 1
MAX_RESOLUTION = 4096
MIN_RESOLUTION = 16
UI_TOL = 1e-3
BRIDGE_SWEEP_SAMPLES = 256


@dataclass(frozen=True)
class SectionDocument:
    """Schema v1 payload: parameters, classification, quartic coefficients,
    plane frame, traced polylines (2D and 3D), residual statistics and the
    optional cone-cylinder block."""

    schema_version: int
    params: dict[str, Any]
    classification: dict[str, Any]
    quartic: dict[str, float]
    frame: dict[str, list[float]]
    bound: float
    polylines2d: list[list[list[float]]]
    polylines3d: list[list[list[float]]]
    closed: list[bool]
    residuals: dict[str, float]
    bridge: dict[str, Any] | None


def validate_request(R: float, r: float, rho: float, alpha_deg: float,
                     phi_deg: float, resolution: int) -> None:
    """Boundary validation with messages naming the violated invariant.

    Range checks on R, r and rho are delegated to the parameter types; angle
    and resolution limits are degree/count specific to the user boundary.
    """
    if not (R >= r > 0):
        raise ParameterError(f"R >= r > 0 violated (R={R}, r={r})")
    if not rho >= 0:
        raise ParameterError(f"rho >= 0 violated (rho={rho})")
    if not abs(phi_deg) <= 90.0:
        raise ParameterError(f"|phi_deg| <= 90 violated (phi_deg={phi_deg})")
    if not math.isfinite(alpha_deg):
        raise ParameterError(f"alpha_deg must be finite (alpha_deg={alpha_deg})")
    if not (MIN_RESOLUTION <= resolution <= MAX_RESOLUTION):
        raise ParameterError(
            f"resolution must be in [{MIN_RESOLUTION}, {MAX_RESOLUTION}] "
            f"(resolution={resolution})")


def build_section_document(R: float, r: float, rho: float = 0.0,
                           alpha_deg: float = 0.0, phi_deg: float = 0.0,
                           resolution: int = 512,
                           tol: float = UI_TOL) -> SectionDocument:
    """Trace, embed, classify and package one toric section.

    This is the single code path behind both ``toric trace --format json``
    and ``GET /api/section``, which therefore produce identical bytes.
    """
    validate_request(R, r, rho, alpha_deg, phi_deg, resolution)
    sp = SectionProblem.from_values(R, r, rho,
                                    phi=math.radians(phi_deg),
                                    alpha=math.radians(alpha_deg))
    curve = embed_section(trace_section(sp, resolution), sp)
    cls = classify(sp, tol)
    q = section_coeffs(sp)
    return SectionDocument(
        schema_version=SCHEMA_VERSION,
        params={"R": float(R), "r": float(r), "rho": float(rho),
                "alpha_deg": float(alpha_deg), "phi_deg": float(phi_deg),
                "resolution": int(resolution)},
        classification=_classification_block(cls),
        quartic={"a": q.a, "b": q.b, "c": q.c, "d": q.d},
        frame={
            "origin": [float(v) for v in sp.frame.origin],
            "axis_t": [float(v) for v in sp.frame.axis_t],
            "axis_w": [float(v) for v in sp.frame.axis_w],
            "normal": [float(v) for v in sp.frame.normal],
        },
        bound=float(curve.bound),
        polylines2d=[p.tolist() for p in curve.polylines2d],
        polylines3d=[p.tolist() for p in curve.polylines3d],
        closed=[bool(c) for c in curve.closed_flags],
        residuals={"max_torus": curve.max_torus_residual,
                   "max_plane": curve.max_plane_residual},
        bridge=_bridge_block(sp),
    )


def _classification_block(cls: SectionClass) -> dict[str, Any]:
    return {"tag": cls.tag, "detail": {k: cls.detail[k] for k in sorted(cls.detail)}}


def _bridge_block(sp: SectionProblem) -> dict[str, Any] | None:
    try:
        geo = bridge_geometry(sp)
    except BridgeUndefinedError:
        return None
    sweep = bridge_sweep(sp, BRIDGE_SWEEP_SAMPLES)
    return {
        "k": geo.k,
        "circle_radius": geo.circle_radius,
        "circle_centers_zy": [list(c) for c in geo.circle_centers_zy],
        "cone_vertex": list(geo.cone_vertex) if geo.cone_vertex else None,
        "vertex_at_infinity": geo.vertex_at_infinity,
        "sweep": sweep,
    }


# ---------------------------------------------------------------------------
# JSON


def _fmt_float(x: float) -> str:
    if not math.isfinite(x):
        raise ValueError(f"non-finite number in document: {x}")
    if x == 0.0:
        return "0"  # canonicalize -0.0 so serialization round-trips
    return format(float(x), ".17g")


def _emit(obj, out: list[str]) -> None:
    if obj is None:
        out.append("null")
    elif isinstance(obj, bool):
        out.append("true" if obj else "false")
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, float):
        out.append(_fmt_float(obj))
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif isinstance(obj, dict):
        out.append("{")
        first = True
        for k, v in obj.items():
            if not first:
                out.append(",")
            first = False
            out.append(json.dumps(str(k)))
            out.append(":")
            _emit(v, out)
        out.append("}")
    elif isinstance(obj, (list, tuple)):
        out.append("[")
        first = True
        for v in obj:
            if not first:
                out.append(",")
            first = False
            _emit(v, out)
        out.append("]")
    else:
        raise TypeError(f"unsupported document value: {type(obj)}")


def dumps_canonical(obj) -> str:
    """Compact, order-preserving JSON with 17-significant-digit floats."""
    out: list[str] = []
    _emit(obj, out)
    return "".join(out)


def to_json(doc: SectionDocument) -> str:
    return dumps_canonical({
        "schema_version": doc.schema_version,
        "params": doc.params,
        "classification": doc.classification,
        "quartic": doc.quartic,
        "frame": doc.frame,
        "bound": doc.bound,
        "polylines2d": doc.polylines2d,
        "polylines3d": doc.polylines3d,
        "closed": doc.closed,
        "residuals": doc.residuals,
        "bridge": doc.bridge,
    })


def from_json(text: str) -> SectionDocument:
    """Parse a schema v1 document; numeric leaves are coerced back to float
    so a parse/serialize round trip is bit exact."""
    d = json.loads(text)
    if d.get("schema_version") != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema_version: {d.get('schema_version')}")
    params = {k: (int(v) if k == "resolution" else float(v))
              for k, v in d["params"].items()}
    bridge = d.get("bridge")
    if bridge is not None:
        bridge = {
            "k": float(bridge["k"]),
            "circle_radius": float(bridge["circle_radius"]),
            "circle_centers_zy": [[float(x) for x in c]
                                  for c in bridge["circle_centers_zy"]],
            "cone_vertex": ([float(x) for x in bridge["cone_vertex"]]
                            if bridge["cone_vertex"] is not None else None),
            "vertex_at_infinity": bool(bridge["vertex_at_infinity"]),
            "sweep": [{"angle": float(s["angle"]), "z": float(s["z"]),
                       "y": float(s["y"]),
                       "x": (float(s["x"]) if s["x"] is not None else None)}
                      for s in bridge["sweep"]],
        }
    return SectionDocument(
        schema_version=int(d["schema_version"]),
        params=params,
        classification={"tag": str(d["classification"]["tag"]),
                        "detail": {k: _coerce_number(v) for k, v in
                                   d["classification"]["detail"].items()}},
        quartic={k: float(v) for k, v in d["quartic"].items()},
        frame={k: [float(x) for x in v] for k, v in d["frame"].items()},
        bound=float(d["bound"]),
        polylines2d=[[[float(x) for x in pt] for pt in poly]
                     for poly in d["polylines2d"]],
        polylines3d=[[[float(x) for x in pt] for pt in poly]
                     for poly in d["polylines3d"]],
        closed=[bool(c) for c in d["closed"]],
        residuals={k: float(v) for k, v in d["residuals"].items()},
        bridge=bridge,
    )


def _coerce_number(v):
    if isinstance(v, bool) or isinstance(v, str) or v is None:
        return v
    if isinstance(v, list):
        return [_coerce_number(x) for x in v]
    return float(v)


# ---------------------------------------------------------------------------
# SVG / CSV


def to_svg(curve: SectionCurve, *, stroke: str = "#c0392b",
           stroke_width: float | None = None, axes: bool = False,
           size: int = 640, precision: int = 9) -> str:
    """Render the 2D polylines as an SVG 1.1 fragment.

    Path data stays in mathematical plane coordinates; the y-axis flip into
    screen orientation is recorded as a ``scale(1,-1)`` transform on the
    enclosing group.  One path element per polyline, closed ones end in Z.
    """
    b = curve.bound
    if b <= 0.0:
        b = max((float(np.abs(p).max()) for p in curve.polylines2d), default=1.0)
    if stroke_width is None:
        stroke_width = 2.0 * b / 320.0
    fmt = f"{{:.{precision}g}}"

    def num(x):
        return fmt.format(float(x))

    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="{num(-b)} {num(-b)} {num(2 * b)} {num(2 * b)}">',
        '<g transform="scale(1,-1)">',
    ]
    if axes:
        lines.append(
            f'<g stroke="#999" stroke-width="{num(stroke_width / 2)}">'
            f'<line x1="{num(-b)}" y1="0" x2="{num(b)}" y2="0"/>'
            f'<line x1="0" y1="{num(-b)}" x2="0" y2="{num(b)}"/></g>')
    for pts, closed in zip(curve.polylines2d, curve.closed_flags):
        coords = " L ".join(f"{num(t)} {num(w)}" for t, w in pts)
        tail = " Z" if closed else ""
        lines.append(f'<path d="M {coords}{tail}" fill="none" '
                     f'stroke="{stroke}" stroke-width="{num(stroke_width)}"/>')
    lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines)


def to_csv(curve: SectionCurve) -> str:
    """Point table ``polyline,index,t,w,x,y,z`` with CRLF line endings and dot
    decimal separators.  Requires an embedded curve."""
    if curve.polylines3d is None:
        raise ValueError("to_csv requires an embedded curve (run embed_section)")
    rows = ["polyline,index,t,w,x,y,z"]
    for pid, (p2, p3) in enumerate(zip(curve.polylines2d, curve.polylines3d)):
        for idx in range(len(p2)):
            t, w = p2[idx]
            x, y, z = p3[idx]
            rows.append(f"{pid},{idx},{_fmt_float(t)},{_fmt_float(w)},"
                        f"{_fmt_float(x)},{_fmt_float(y)},{_fmt_float(z)}")
    return "\r\n".join(rows) + "\r\n"

"""Stateless HTTP JSON service exposing the section kernel.

* ``GET /api/section`` computes one section document (same bytes as the CLI
  ``trace --format json`` for the same parameters),
* ``GET /api/presets`` lists named parameter sets, derived from the defining
  formulas of each special section,
* ``GET /`` serves the built browser explorer when available.

Every request is computed from scratch on immutable inputs, so responses are
deterministic and the service can serve concurrent requests without locking.
"""

from __future__ import annotations

import math
import os
from pathlib import Path

from fastapi import FastAPI, Query, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import HTMLResponse, JSONResponse

from .classify import classify, villarceau_angle
from .document import UI_TOL, build_section_document, dumps_canonical, to_json
from .geometry import ParameterError, TorusParams
from .section import SectionProblem

SERVICE_RESOLUTION = 256

_FALLBACK_PAGE = """<!doctype html>
<html><head><title>toric service</title></head>
<body style="font-family: sans-serif">
<h1>toric section service</h1>
<p>The explorer UI bundle was not found. Build it with
<code>npm run build</code> in the <code>frontend/</code> directory, or point
the service at a bundle with <code>--ui-dir</code>.</p>
<p>API: <a href="/api/presets">/api/presets</a>,
<code>/api/section?R=2&amp;r=1&amp;rho=1&amp;alpha=0&amp;phi=0</code></p>
</body></html>
"""


def _preset(name: str, R: float, r: float, rho: float, phi_deg: float,
            description: str) -> dict:
    sp = SectionProblem.from_values(R, r, rho, phi=math.radians(phi_deg))
    return {
        "name": name,
        "params": {"R": R, "r": r, "rho": rho, "alpha": 0.0, "phi": phi_deg},
        "expected_class": classify(sp, UI_TOL).tag,
        "description": description,
    }


def build_presets() -> list[dict]:
    """Named parameter sets; every defining value is derived from its formula
    rather than typed in as a literal."""
    presets = []
    R, r = 2.0, 1.0
    v_deg = math.degrees(villarceau_angle(TorusParams(R, r)))
    presets.append(_preset(
        "Villarceau", R, r, rho=0.0, phi_deg=v_deg,
        description="central bitangent plane; the section is two congruent "
                    "circles of radius R"))
    R, r = 3.0, 1.0
    presets.append(_preset(
        "Cassini", R, r, rho=r, phi_deg=0.0,
        description="axis-parallel plane at distance rho = r; constant "
                    "focal-distance product 2Rr"))
    r = 1.0
    R = 2.0 * r
    presets.append(_preset(
        "Lemniscate", R, r, rho=r, phi_deg=0.0,
        description="Cassini section with R = 2r; figure eight through the "
                    "plane origin"))
    R, r = 3.0, 1.0
    presets.append(_preset(
        "Hippopede", R, r, rho=R - r, phi_deg=0.0,
        description="axis-parallel plane tangent to the inner equator "
                    "(rho = R - r)"))
    R, r = 2.0, 1.0
    presets.append(_preset(
        "Central", R, r, rho=0.0, phi_deg=35.0,
        description="generic plane through the torus center"))
    presets.append(_preset(
        "Horizontal", R, r, rho=0.5, phi_deg=90.0,
        description="plane perpendicular to the torus axis; two concentric "
                    "circles"))
    return presets


def create_app(ui_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="toric", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origin_regex=r"http://(localhost|127\.0\.0\.1)(:\d+)?",
        allow_methods=["GET"],
        allow_headers=["*"],
    )

    presets_json = dumps_canonical(build_presets())

    @app.exception_handler(RequestValidationError)
    async def malformed_params(_request: Request, exc: RequestValidationError):
        # missing or non-numeric query parameters are client errors too
        return JSONResponse(status_code=400, content={"error": str(exc.errors())})

    @app.get("/api/section")
    def api_section(R: float, r: float, rho: float = 0.0, alpha: float = 0.0,
                    phi: float = 0.0,
                    resolution: int = Query(default=SERVICE_RESOLUTION)):
        try:
            doc = build_section_document(
                R, r, rho=rho, alpha_deg=alpha, phi_deg=phi,
                resolution=resolution, tol=UI_TOL)
        except ParameterError as e:
            return JSONResponse(status_code=400, content={"error": str(e)})
        return Response(content=to_json(doc), media_type="application/json")

    @app.get("/api/presets")
    def api_presets():
        return Response(content=presets_json, media_type="application/json")

    static_dir = _resolve_ui_dir(ui_dir)
    if static_dir is not None:
        from fastapi.staticfiles import StaticFiles
        app.mount("/", StaticFiles(directory=str(static_dir), html=True),
                  name="explorer")
    else:
        @app.get("/")
        def index():
            return HTMLResponse(_FALLBACK_PAGE)

    return app


def _resolve_ui_dir(ui_dir: str | None) -> Path | None:
    candidates = []
    if ui_dir:
        candidates.append(Path(ui_dir))
    env = os.environ.get("TORIC_UI_DIR")
    if env:
        candidates.append(Path(env))
    candidates.append(Path.cwd() / "frontend" / "dist")
    candidates.append(Path(__file__).resolve().parents[2] / "frontend" / "dist")
    for c in candidates:
        if (c / "index.html").is_file():
            return c
    return None

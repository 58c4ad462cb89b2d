"""Toric sections: geometry kernel for torus-plane intersection curves.

Trace the intersection of a torus and an arbitrary plane as polylines,
classify the named special sections (Villarceau circles, Cassini ovals,
Bernoulli's lemniscate, hippopedes, spiric and central sections), verify
their metric properties, reproduce the section through the cone-cylinder
construction, and export everything as JSON, SVG or CSV.
"""

from .bridge import (
    BridgeGeometry,
    BridgeSamples,
    BridgeUndefinedError,
    bridge_cone_residual,
    bridge_construct,
    bridge_geometry,
    bridge_sweep,
    verify_bridge_equivalence,
)
from .classify import (
    CircleFit,
    SectionClass,
    classify,
    fit_circle,
    verify_cassini_property,
    verify_villarceau_circles,
    villarceau_angle,
)
from .document import (
    SectionDocument,
    build_section_document,
    from_json,
    to_csv,
    to_json,
    to_svg,
)
from .geometry import (
    ConeParams,
    ParameterError,
    PlaneFrame,
    PlaneParams,
    TorusParams,
    cone_point,
    cone_residual,
    plane_embed,
    plane_frame,
    plane_project,
    torus_point,
    torus_poly_residual,
    torus_residual,
)
from .section import (
    HorizontalPlaneError,
    QuarticCoeffs,
    SectionProblem,
    quartic_value,
    section_coeffs,
    section_residual,
    squared_form_value,
    t_of_w,
    t_of_w_domain,
)
from .trace import SectionCurve, circles_horizontal, embed_section, trace_section

__version__ = "0.1.0"

__all__ = [
    "BridgeGeometry",
    "BridgeSamples",
    "BridgeUndefinedError",
    "CircleFit",
    "ConeParams",
    "HorizontalPlaneError",
    "ParameterError",
    "PlaneFrame",
    "PlaneParams",
    "QuarticCoeffs",
    "SectionClass",
    "SectionCurve",
    "SectionDocument",
    "SectionProblem",
    "TorusParams",
    "bridge_cone_residual",
    "bridge_construct",
    "bridge_geometry",
    "bridge_sweep",
    "build_section_document",
    "circles_horizontal",
    "classify",
    "cone_point",
    "cone_residual",
    "embed_section",
    "fit_circle",
    "from_json",
    "plane_embed",
    "plane_frame",
    "plane_project",
    "quartic_value",
    "section_coeffs",
    "section_residual",
    "squared_form_value",
    "t_of_w",
    "t_of_w_domain",
    "to_csv",
    "to_json",
    "to_svg",
    "torus_point",
    "torus_poly_residual",
    "torus_residual",
    "trace_section",
    "verify_bridge_equivalence",
    "verify_cassini_property",
    "verify_villarceau_circles",
    "villarceau_angle",
]

"""Detection of the named toric sections and their metric properties.

Tags, most specific first where conditions overlap:

* ``Empty`` - the plane misses the torus entirely,
* ``HorizontalCircles`` - plane perpendicular to the torus axis,
* ``Villarceau`` / ``CentralGeneric`` - plane through the torus center,
* ``BernoulliLemniscate`` / ``CassiniOval`` / ``HippopedeOfProclus`` /
  ``SpiricGeneric`` - plane parallel to the torus axis,
* ``Generic`` - everything else.

All comparisons are relative (scaled by R or r) or act on angles, so the
classification is invariant under uniform scaling of (R, r, rho).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .geometry import TorusParams
from .section import SectionProblem
from .trace import SectionCurve

TAGS = (
    "Empty",
    "HorizontalCircles",
    "CentralGeneric",
    "Villarceau",
    "SpiricGeneric",
    "CassiniOval",
    "BernoulliLemniscate",
    "HippopedeOfProclus",
    "Generic",
)

DEFAULT_TOL = 1e-9  # programmatic; interactive surfaces use 1e-3


@dataclass(frozen=True)
class SectionClass:
    tag: str
    detail: dict[str, Any] = field(default_factory=dict)


@dataclass(frozen=True)
class CircleFit:
    """Algebraic least-squares circle fit of a 2D point set."""

    center: tuple[float, float]
    radius: float
    max_radial_deviation: float


def villarceau_angle(tp: TorusParams) -> float:
    """Tilt of the bitangent central plane: arctan(sqrt(R^2 - r^2) / r).

    This is the elevation of the plane's *normal* (equivalently the angle the
    plane makes with the torus axis).  A central plane whose normal elevation
    |phi| equals this value is tangent to the torus at two points and cuts it
    in two congruent circles of radius R; the condition is equivalent to
    cos(phi) = r/R.  Returns a value in [0, pi/2).
    """
    R, r = tp.R, tp.r
    return math.atan(math.sqrt(max(0.0, R * R - r * r)) / r)


def is_empty_section(sp: SectionProblem) -> bool:
    """True when the plane misses the torus: the largest projection of any
    torus point onto the plane normal is R cos(phi) + r."""
    R, r = sp.torus.R, sp.torus.r
    return sp.plane.rho > R * abs(math.cos(sp.plane.phi)) + r


def classify(sp: SectionProblem, tol: float = DEFAULT_TOL) -> SectionClass:
    """Tag the section of ``sp``; ``tol`` is the relative tolerance used for
    every defining equality (must be in (0, 1e-2])."""
    if not (0.0 < tol <= 1e-2):
        raise ValueError(f"tol must be in (0, 1e-2], got {tol}")
    R, r = sp.torus.R, sp.torus.r
    rho = sp.plane.rho
    aphi = abs(sp.plane.phi)

    if is_empty_section(sp):
        return SectionClass("Empty")
    if abs(aphi - math.pi / 2.0) <= tol:
        detail = {"radii": _horizontal_radii(R, r, rho, tol)}
        return SectionClass("HorizontalCircles", detail)
    if rho <= tol * R:
        v = villarceau_angle(sp.torus)
        if abs(aphi - v) <= tol:
            return SectionClass("Villarceau", {
                "angle_rad": v,
                "angle_deg": math.degrees(v),
                "circle_radius": R,
            })
        return SectionClass("CentralGeneric")
    if aphi <= tol:
        cassini = abs(rho - r) <= tol * r
        if cassini and abs(R - 2.0 * r) <= tol * r:
            return SectionClass("BernoulliLemniscate", _cassini_detail(R, r))
        if cassini:
            return SectionClass("CassiniOval", _cassini_detail(R, r))
        if abs(rho - (R - r)) <= tol * R:
            return SectionClass("HippopedeOfProclus", {"rho": rho, "inner_radius": R - r})
        return SectionClass("SpiricGeneric")
    return SectionClass("Generic")


def _cassini_detail(R: float, r: float) -> dict[str, float]:
    # focal-product constant b^2 = 2Rr, semi focal distance c = R
    return {"b_squared": 2.0 * R * r, "c": R}


def _horizontal_radii(R, r, rho, tol) -> list[float]:
    if abs(rho - r) <= tol * r:
        return [R]
    if rho > r:
        return []
    half = math.sqrt(r * r - rho * rho)
    return [R + half, R - half]


def fit_circle(points: np.ndarray) -> CircleFit:
    """Least-squares circle through a point set (algebraic Kasa fit, exact for
    points lying on a true circle)."""
    pts = np.asarray(points, dtype=float)
    if len(pts) < 3:
        raise ValueError("circle fit needs at least 3 points")
    A = np.column_stack([2.0 * pts[:, 0], 2.0 * pts[:, 1], np.ones(len(pts))])
    rhs = (pts ** 2).sum(axis=1)
    (cx, cy, c0), *_ = np.linalg.lstsq(A, rhs, rcond=None)
    radius = math.sqrt(max(0.0, c0 + cx * cx + cy * cy))
    dev = np.abs(np.hypot(pts[:, 0] - cx, pts[:, 1] - cy) - radius)
    return CircleFit(center=(float(cx), float(cy)), radius=float(radius),
                     max_radial_deviation=float(dev.max()))


def verify_cassini_property(curve: SectionCurve, sp: SectionProblem,
                            tol: float = 1e-3) -> float:
    """Largest relative deviation of |P-F1|*|P-F2| from 2Rr over the traced
    points, with foci at (+-R, 0) in plane coordinates.

    Only meaningful for Cassini configurations (phi = 0, rho = r); raises
    ValueError otherwise.  The foci placement follows from the phi = 0,
    rho = r specialization of the section quartic, which collapses to
    (t^2 + w^2 + R^2)^2 - 4 R^2 t^2 = 4 R^2 r^2.
    """
    tag = classify(sp, tol).tag
    if tag not in ("CassiniOval", "BernoulliLemniscate"):
        raise ValueError(f"not a Cassini configuration (classified {tag})")
    R, r = sp.torus.R, sp.torus.r
    target = 2.0 * R * r
    worst = 0.0
    for pts in curve.polylines2d:
        prod = (np.hypot(pts[:, 0] - R, pts[:, 1])
                * np.hypot(pts[:, 0] + R, pts[:, 1]))
        worst = max(worst, float(np.abs(prod - target).max()) / target)
    return worst


def verify_villarceau_circles(curve: SectionCurve, sp: SectionProblem,
                              tol: float = 1e-3) -> list[CircleFit]:
    """Circle-fit report for a traced bitangent central section.

    Expects the trace to split into exactly two polylines; for a true
    configuration both fitted radii equal R to high accuracy.
    """
    tag = classify(sp, tol).tag
    if tag != "Villarceau":
        raise ValueError(f"not a Villarceau configuration (classified {tag})")
    if curve.is_empty:
        raise ValueError("curve is empty")
    if len(curve.polylines2d) != 2:
        raise ValueError(
            f"component count != 2 (got {len(curve.polylines2d)})")
    return [fit_circle(p) for p in curve.polylines2d]

"""Cone-cylinder construction of a toric section.

Substituting x^2 -> z^2 cos^2(phi) - (rho cos(phi) - y sin(phi))^2 into the
in-plane section equation removes the square root and leaves a pair of
congruent circles in the (z, y) plane:

    (z +/- R/cos(phi))^2 + (y + rho tan(phi))^2 = r^2 / cos^2(phi)

The inverse substitution is realized geometrically: sweep a point P around
one circle (a cylinder section), intersect the line through P perpendicular
to the yz plane with the cone z^2 = (x/cos(phi))^2 + (rho - y tan(phi))^2,
and drop the two hits to the xy plane.  The projected points lie exactly on
the toric section with parameters (R, r, rho, phi).

Circle coordinates are stored as (z, y) pairs throughout; mind the axis
order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .section import SectionProblem, section_residual


class BridgeUndefinedError(ValueError):
    """The construction degenerates for horizontal planes."""


@dataclass(frozen=True)
class BridgeGeometry:
    """Pair of source circles (in (z, y) coordinates), companion cone vertex
    and the squeeze factor k = cos(phi) that turns the ellipses into circles.

    ``cone_vertex`` is None with ``vertex_at_infinity`` set when phi = 0 and
    rho > 0 (the cone degenerates to a hyperbolic cylinder).
    """

    circle_centers_zy: tuple[tuple[float, float], tuple[float, float]]
    circle_radius: float
    k: float
    cone_vertex: tuple[float, float, float] | None
    vertex_at_infinity: bool


@dataclass(frozen=True)
class BridgeSamples:
    """Construction output: projected section points and their pre-projection
    lifts on the cone, grouped by source circle."""

    projected: tuple[np.ndarray, np.ndarray]   # (m_i, 2) arrays of (x, y)
    lifted: tuple[np.ndarray, np.ndarray]      # (m_i, 3) arrays of (x, y, z)


def _cos_phi(sp: SectionProblem) -> float:
    c = math.cos(sp.plane.phi)
    if abs(c) < 1e-12:
        raise BridgeUndefinedError(
            "bridge undefined for horizontal plane (|cos phi| < 1e-12)")
    return c


def bridge_geometry(sp: SectionProblem) -> BridgeGeometry:
    """Centers (+-R/cos(phi), -rho tan(phi)), radius r/cos(phi), vertex
    (0, rho/tan(phi), 0) and k = cos(phi)."""
    c = _cos_phi(sp)
    R, r = sp.torus.R, sp.torus.r
    rho, phi = sp.plane.rho, sp.plane.phi
    t = math.tan(phi)
    cy = -rho * t
    if abs(t) < 1e-12:
        if rho > 0.0:
            vertex, at_inf = None, True
        else:
            vertex, at_inf = (0.0, 0.0, 0.0), False
    else:
        vertex, at_inf = (0.0, rho / t, 0.0), False
    return BridgeGeometry(
        circle_centers_zy=((R / c, cy), (-R / c, cy)),
        circle_radius=r / c,
        k=c,
        cone_vertex=vertex,
        vertex_at_infinity=at_inf,
    )


def bridge_cone_residual(p, sp: SectionProblem) -> float:
    """Residual z^2 - (x/cos(phi))^2 - (rho - y tan(phi))^2 of the companion
    cone; zero on the surface.  Horizontal slices z = z0 are ellipses with
    semi-axes z0 cos(phi) and z0/tan(phi)."""
    c = _cos_phi(sp)
    x, y, z = p
    t = math.tan(sp.plane.phi)
    return z * z - (x / c) ** 2 - (sp.plane.rho - y * t) ** 2


def bridge_construct(sp: SectionProblem, samples: int = 1024) -> BridgeSamples:
    """Sweep both source circles and return every projected section point.

    Circle points are sampled uniformly in angle.  A sample contributes the
    two symmetric points (+-x, y) when the perpendicular line actually meets
    the cone (nonnegative radicand) and nothing otherwise.
    """
    if samples < 8:
        raise ValueError(f"samples must be >= 8 (got {samples})")
    c = _cos_phi(sp)
    geo = bridge_geometry(sp)
    rho, phi = sp.plane.rho, sp.plane.phi
    sip = math.sin(phi)
    theta = np.linspace(0.0, 2.0 * math.pi, samples, endpoint=False)
    projected = []
    lifted = []
    for cz, cy in geo.circle_centers_zy:
        z = cz + geo.circle_radius * np.cos(theta)
        y = cy + geo.circle_radius * np.sin(theta)
        radicand = (z * c) ** 2 - (rho * c - y * sip) ** 2
        ok = radicand >= 0.0
        x = np.sqrt(radicand[ok])
        yk, zk = y[ok], z[ok]
        xs = np.concatenate([x, -x])
        ys = np.concatenate([yk, yk])
        zs = np.concatenate([zk, zk])
        projected.append(np.column_stack([xs, ys]))
        lifted.append(np.column_stack([xs, ys, zs]))
    return BridgeSamples(projected=(projected[0], projected[1]),
                         lifted=(lifted[0], lifted[1]))


def verify_bridge_equivalence(sp: SectionProblem, samples: int = 1024) -> float:
    """Worst |section residual| over the constructed points: numerical check
    of the plane-equation equivalence between the toric section and the
    projected cone-cylinder intersection.  Vacuously 0 for empty output."""
    out = bridge_construct(sp, samples)
    worst = 0.0
    for pts in out.projected:
        if len(pts):
            res = section_residual(pts[:, 0], pts[:, 1], sp)
            worst = max(worst, float(np.abs(res).max()))
    return worst


def bridge_sweep(sp: SectionProblem, samples: int = 256) -> list[dict]:
    """Per-angle construction record for one full sweep of the first circle,
    intended for animation: angle, the circle point (z, y) and the lifted x
    (None where the line misses the cone)."""
    c = _cos_phi(sp)
    geo = bridge_geometry(sp)
    rho, phi = sp.plane.rho, sp.plane.phi
    sip = math.sin(phi)
    cz, cy = geo.circle_centers_zy[0]
    records = []
    for k in range(samples):
        ang = 2.0 * math.pi * k / samples
        z = cz + geo.circle_radius * math.cos(ang)
        y = cy + geo.circle_radius * math.sin(ang)
        radicand = (z * c) ** 2 - (rho * c - y * sip) ** 2
        x = math.sqrt(radicand) if radicand >= 0.0 else None
        records.append({"angle": ang, "z": z, "y": y, "x": x})
    return records

"""Torus, cone and plane primitives.

Conventions used throughout the package:

* the torus is centered at the origin with the z axis as its axis of
  revolution and the xy plane as its equatorial plane,
* a cutting plane is described by the spherical position (alpha, phi, rho)
  of its unit normal: alpha is the azimuth, phi the elevation of the normal
  and rho the distance of the plane from the origin,
* every angle is in radians; degrees appear only at CLI/HTTP boundaries.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

TWO_PI = 2.0 * math.pi


class ParameterError(ValueError):
    """Raised when a shape parameter violates its documented range."""


def _vec3(x: float, y: float, z: float) -> np.ndarray:
    v = np.array([x, y, z], dtype=float)
    v.flags.writeable = False
    return v


@dataclass(frozen=True)
class TorusParams:
    """Torus shape: major radius ``R`` (center circle) and minor radius ``r`` (tube).

    Self-intersecting (spindle) tori are rejected: ``R >= r > 0``.
    """

    R: float
    r: float

    def __post_init__(self):
        if not (self.R >= self.r > 0.0):
            raise ParameterError(
                f"R >= r > 0 violated (R={self.R}, r={self.r})")


@dataclass(frozen=True)
class ConeParams:
    """Right circular double cone of half-aperture ``theta``, apex at the origin."""

    theta: float

    def __post_init__(self):
        if not (0.0 < self.theta < math.pi / 2.0):
            raise ParameterError(
                f"0 < theta < pi/2 violated (theta={self.theta})")


@dataclass(frozen=True)
class PlaneParams:
    """Cutting plane given by its normal direction (alpha, phi) and distance rho.

    ``alpha`` is normalized into [0, 2*pi); ``phi`` must lie in [-pi/2, pi/2]
    and ``rho`` must be nonnegative.
    """

    alpha: float
    phi: float
    rho: float

    def __post_init__(self):
        if not (-math.pi / 2.0 <= self.phi <= math.pi / 2.0):
            raise ParameterError(
                f"|phi| <= pi/2 violated (phi={self.phi})")
        if not self.rho >= 0.0:
            raise ParameterError(f"rho >= 0 violated (rho={self.rho})")
        object.__setattr__(self, "alpha", self.alpha % TWO_PI)


@dataclass(frozen=True)
class PlaneFrame:
    """Orthonormal coordinate frame embedded in a cutting plane.

    ``origin`` is the foot of the perpendicular from the torus center,
    ``axis_t`` the horizontal in-plane axis (zero z component) and ``axis_w``
    the in-plane axis perpendicular to it.  Note the triple satisfies
    ``axis_t x axis_w == -normal``; see :func:`plane_frame`.
    """

    origin: np.ndarray
    axis_t: np.ndarray
    axis_w: np.ndarray
    normal: np.ndarray


def torus_point(u: float, v: float, tp: TorusParams) -> np.ndarray:
    """Point on the torus: ``u`` positions the point on the revolving circle,
    ``v`` rotates that circle about the z axis."""
    ring = tp.R + tp.r * math.cos(u)
    return _vec3(ring * math.cos(v), ring * math.sin(v), tp.r * math.sin(u))


def torus_residual(p, tp: TorusParams) -> float:
    """Square-root-form residual ``(sqrt(x^2+y^2) - R)^2 + z^2 - r^2``.

    Zero on the surface, negative inside the tube, positive outside.
    """
    x, y, z = p
    return (math.hypot(x, y) - tp.R) ** 2 + z * z - tp.r * tp.r


def torus_poly_residual(p, tp: TorusParams) -> float:
    """Polynomial (bicircular quartic) residual
    ``(x^2+y^2+z^2+R^2-r^2)^2 - 4 R^2 (x^2+y^2)``.

    Vanishes exactly where :func:`torus_residual` vanishes.
    """
    x, y, z = p
    s = x * x + y * y
    a = s + z * z + tp.R * tp.R - tp.r * tp.r
    return a * a - 4.0 * tp.R * tp.R * s


def cone_residual(p, cp: ConeParams) -> float:
    """Implicit residual ``(x^2+y^2) cos^2(theta) - z^2 sin^2(theta)`` of the
    double cone about the z axis."""
    x, y, z = p
    c = math.cos(cp.theta)
    s = math.sin(cp.theta)
    return (x * x + y * y) * c * c - z * z * s * s


def cone_point(s: float, psi: float, cp: ConeParams) -> np.ndarray:
    """Point on the cone at arc parameter ``s`` along the generator, rotated by ``psi``."""
    return _vec3(s * math.sin(cp.theta) * math.cos(psi),
                 s * math.sin(cp.theta) * math.sin(psi),
                 s * math.cos(cp.theta))


def plane_frame(pp: PlaneParams) -> PlaneFrame:
    """Build the in-plane frame for a cutting plane.

    normal = (cos a cos p, sin a cos p, sin p), origin = rho * normal,
    axis_t = (sin a, -cos a, 0), axis_w = (-cos a sin p, -sin a sin p, cos p).

    The triple (axis_t, axis_w, normal) is orthonormal but left-handed:
    axis_t x axis_w = -normal.  The in-plane curve equations only involve t^2,
    so the section is unaffected; the 3D embedding convention is fixed here.
    """
    ca, sa = math.cos(pp.alpha), math.sin(pp.alpha)
    cp, sp = math.cos(pp.phi), math.sin(pp.phi)
    normal = _vec3(ca * cp, sa * cp, sp)
    origin = _vec3(pp.rho * ca * cp, pp.rho * sa * cp, pp.rho * sp)
    axis_t = _vec3(sa, -ca, 0.0)
    axis_w = _vec3(-ca * sp, -sa * sp, cp)
    return PlaneFrame(origin=origin, axis_t=axis_t, axis_w=axis_w, normal=normal)


def plane_embed(t: float, w: float, f: PlaneFrame) -> np.ndarray:
    """Map in-plane coordinates (t, w) to the 3D point origin + t*axis_t + w*axis_w."""
    return f.origin + t * f.axis_t + w * f.axis_w


def plane_embed_many(tw: np.ndarray, f: PlaneFrame) -> np.ndarray:
    """Vectorized :func:`plane_embed` for an (n, 2) array of (t, w) pairs."""
    tw = np.asarray(tw, dtype=float)
    return (f.origin[None, :]
            + tw[:, 0:1] * f.axis_t[None, :]
            + tw[:, 1:2] * f.axis_w[None, :])


def plane_project(p, f: PlaneFrame) -> tuple[float, float]:
    """In-plane coordinates (t, w) of a 3D point; inverse of :func:`plane_embed`
    for points lying on the plane."""
    d = np.asarray(p, dtype=float) - f.origin
    return float(d @ f.axis_t), float(d @ f.axis_w)

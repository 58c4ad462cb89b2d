"""In-plane equations of a toric section.

Substituting the plane's parametric equations into the torus equation
collapses, after expansion, to a single equation in the in-plane coordinates
(t, w):

    t^2 + w^2 + rho^2 + R^2 - r^2 = 2 R sqrt(t^2 + (rho cos(phi) - w sin(phi))^2)

The left side is nonnegative whenever R >= r, so squaring introduces no
spurious branch and the zero set equals that of the expanded bicircular
quartic ``(t^2+w^2)^2 + a t^2 + b w^2 + c w + d``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import (
    PlaneFrame,
    PlaneParams,
    TorusParams,
    plane_frame,
)


class HorizontalPlaneError(ValueError):
    """Raised where a horizontal cutting plane (|phi| = pi/2) is unsupported."""


@dataclass(frozen=True)
class SectionProblem:
    """A torus together with a cutting plane and its derived in-plane frame."""

    torus: TorusParams
    plane: PlaneParams
    frame: PlaneFrame

    def __init__(self, torus: TorusParams, plane: PlaneParams):
        object.__setattr__(self, "torus", torus)
        object.__setattr__(self, "plane", plane)
        object.__setattr__(self, "frame", plane_frame(plane))

    @classmethod
    def from_values(cls, R: float, r: float, rho: float = 0.0,
                    phi: float = 0.0, alpha: float = 0.0) -> "SectionProblem":
        return cls(TorusParams(R, r), PlaneParams(alpha=alpha, phi=phi, rho=rho))

    @property
    def is_horizontal(self) -> bool:
        """True when the plane is horizontal to working precision (cos(phi) ~ 0)."""
        return abs(math.cos(self.plane.phi)) < 1e-12


@dataclass(frozen=True)
class QuarticCoeffs:
    """Coefficients of the in-plane quartic ``(t^2+w^2)^2 + a t^2 + b w^2 + c w + d = 0``."""

    a: float
    b: float
    c: float
    d: float


def section_residual(t, w, sp: SectionProblem):
    """Square-root-form residual of the section equation at in-plane (t, w).

    Accepts scalars or numpy arrays.  Zero exactly on the section curve; the
    value only depends on t through t^2, so the curve is mirror symmetric
    about the w axis.
    """
    R, r = sp.torus.R, sp.torus.r
    rho, phi = sp.plane.rho, sp.plane.phi
    cp, sip = math.cos(phi), math.sin(phi)
    radial = t * t + (rho * cp - w * sip) ** 2
    return t * t + w * w + rho * rho + R * R - r * r - 2.0 * R * np.sqrt(radial)


def section_coeffs(sp: SectionProblem) -> QuarticCoeffs:
    """Expand the squared section equation into bicircular-quartic coefficients.

    With p = rho^2 + R^2 - r^2:

        a = 2p - 4R^2
        b = 2p - 4R^2 sin^2(phi)
        c = 8R^2 rho cos(phi) sin(phi)
        d = p^2 - 4R^2 rho^2 cos^2(phi)
    """
    R, r = sp.torus.R, sp.torus.r
    rho, phi = sp.plane.rho, sp.plane.phi
    cp, sip = math.cos(phi), math.sin(phi)
    p = rho * rho + R * R - r * r
    four_r2 = 4.0 * R * R
    return QuarticCoeffs(
        a=2.0 * p - four_r2,
        b=2.0 * p - four_r2 * sip * sip,
        c=2.0 * four_r2 * rho * cp * sip,
        d=p * p - four_r2 * rho * rho * cp * cp,
    )


def quartic_value(t, w, q: QuarticCoeffs):
    """Evaluate ``(t^2+w^2)^2 + a t^2 + b w^2 + c w + d``; array friendly."""
    s = t * t + w * w
    return s * s + q.a * t * t + q.b * w * w + q.c * w + q.d


def squared_form_value(t, w, sp: SectionProblem):
    """Squared square-root form ``(t^2+w^2+rho^2+R^2-r^2)^2 - 4R^2 (t^2 + (...)^2)``.

    Identical (as a polynomial) to :func:`quartic_value` with the coefficients
    of :func:`section_coeffs`; kept separate as the cross-check oracle.
    """
    R, r = sp.torus.R, sp.torus.r
    rho, phi = sp.plane.rho, sp.plane.phi
    cp, sip = math.cos(phi), math.sin(phi)
    lhs = t * t + w * w + rho * rho + R * R - r * r
    radial = t * t + (rho * cp - w * sip) ** 2
    return lhs * lhs - 4.0 * R * R * radial


def t_of_w_domain(sp: SectionProblem) -> tuple[float, float]:
    """The w interval on which the inner radicand ``r^2 - (w cos(phi) + rho sin(phi))^2``
    of :func:`t_of_w` is nonnegative.

    Requires a non-horizontal plane.
    """
    if sp.is_horizontal:
        raise HorizontalPlaneError(
            "horizontal-plane parametrization unavailable (|cos phi| < 1e-12)")
    r = sp.torus.r
    rho, phi = sp.plane.rho, sp.plane.phi
    cp, sip = math.cos(phi), math.sin(phi)
    lo = (-r - rho * sip) / cp
    hi = (r - rho * sip) / cp
    return (lo, hi) if lo <= hi else (hi, lo)


def t_of_w(w: float, sign_outer: int, sign_inner: int,
           sp: SectionProblem) -> float | None:
    """Analytic branch parametrization of the section:

        t = sign_outer * sqrt((R + sign_inner * sqrt(inner))^2 - (rho cos(phi) - w sin(phi))^2)
        inner = r^2 - (w cos(phi) + rho sin(phi))^2

    Returns None when either radicand is negative (no point on that branch).
    Raises :class:`HorizontalPlaneError` for horizontal planes, which are
    handled by :func:`toric.trace.circles_horizontal` instead.
    """
    if sp.is_horizontal:
        raise HorizontalPlaneError(
            "horizontal-plane parametrization unavailable (|cos phi| < 1e-12)")
    if sign_outer not in (-1, 1) or sign_inner not in (-1, 1):
        raise ValueError("sign_outer and sign_inner must be +1 or -1")
    R, r = sp.torus.R, sp.torus.r
    rho, phi = sp.plane.rho, sp.plane.phi
    cp, sip = math.cos(phi), math.sin(phi)
    inner = r * r - (w * cp + rho * sip) ** 2
    if inner < 0.0:
        return None
    ring = R + sign_inner * math.sqrt(inner)
    outer = ring * ring - (rho * cp - w * sip) ** 2
    if outer < 0.0:
        return None
    return sign_outer * math.sqrt(outer)

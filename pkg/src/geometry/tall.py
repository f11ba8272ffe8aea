"""
Tall rectangles Σ_d, 0 < d < 1.

The generating curve σ_d in the vertical plane y = 0 is t = ±λ_d(x) with

    λ_d(x) = ∫ 2 dv / √Q(v) from d₁ to x,   Q(v) = d²(1 + v²)² - (1 - v²)²,

d₁ = √(1-d)/√(1+d). Q factors as (1 - d²)(v - d₁)(v + d₁)(1/d₁ - v)(1/d₁ + v)
and is invariant (up to v⁴) under v -> 1/v, which extends λ_d to
[d₁, 1/d₁] through λ_d(x) = h_d - λ_d(1/x). The surface itself is swept
by the disk automorphisms T_y(x) = (x + iy)/(1 - iyx) that fix ±i.
"""

import logging
from functools import partial
from typing import Optional

import numpy as np
from scipy.special import elliprf

from ..config import Tolerances
from ..models.entities import Model, Point3, TallRectSpec
from ..models.errors import DomainError
from . import jets
from .curvature import ImmersionPatch
from .hyperbolic import mobius_g
from .quadrature import integrate

logger = logging.getLogger(__name__)

ENDPOINT_SLACK = 1e-14


def _check_d(d: float):
    if not 0.0 < d < 1.0:
        raise DomainError("tall rectangle parameter d must lie in (0, 1)", d=d)


def d1(d: float) -> float:
    """Turning point d₁ = √(1-d)/√(1+d)."""
    _check_d(d)
    return float(np.sqrt(1.0 - d) / np.sqrt(1.0 + d))


def _q(d: float, v):
    return d * d * (1.0 + v * v) ** 2 - (1.0 - v * v) ** 2


def lambda_quadrature(d: float, x: float, tol: Optional[Tolerances] = None) -> float:
    """λ_d(x) by adaptive quadrature, d₁ ≤ x ≤ 1; v = d₁ + (x - d₁)s² removes the endpoint singularity."""
    tol = tol or Tolerances()
    a = d1(d)
    if not (a - ENDPOINT_SLACK <= x <= 1.0 + ENDPOINT_SLACK):
        raise DomainError("lambda_quadrature needs x in [d1, 1]", d=d, x=x, d1=a)
    delta = x - a
    if delta <= 0:
        return 0.0
    b = 1.0 / a
    scale = 1.0 - d * d

    def integrand(s):
        v = a + delta * s * s
        return 4.0 * np.sqrt(delta) / np.sqrt(scale * (v + a) * (b - v) * (b + v))

    return integrate(integrand, 0.0, 1.0, tol.quadrature * 1e-2, label="lambda_d")


def height_tall(d: float, tol: Optional[Tolerances] = None) -> float:
    """h_d = 2·λ_d(1)."""
    return 2.0 * lambda_quadrature(d, 1.0, tol)


def lambda_extended(d: float, x: float, tol: Optional[Tolerances] = None) -> float:
    """λ_d on the annular range [d₁, 1/d₁]."""
    a = d1(d)
    if x <= 1.0:
        return lambda_quadrature(d, x, tol)
    if x > 1.0 / a * (1.0 + ENDPOINT_SLACK):
        raise DomainError("annular extension needs x <= 1/d1", d=d, x=x, d1=a)
    return height_tall(d, tol) - lambda_quadrature(d, max(1.0 / x, a), tol)


def lambda_derivatives(d: float, x: float) -> tuple[float, float]:
    """λ' = 2/√Q and λ'' = -Q'/Q^{3/2}, valid on (d₁, 1/d₁)."""
    _check_d(d)
    q = _q(d, x)
    if not q > 0:
        raise DomainError("λ_d is singular at the turning points", d=d, x=x)
    dq = 4.0 * d * d * x * (1.0 + x * x) + 4.0 * x * (1.0 - x * x)
    return float(2.0 / np.sqrt(q)), float(-dq / q ** 1.5)


def elliptic_F(phi: float, m: float) -> complex:
    """
    Incomplete elliptic integral of the first kind F(φ | m), |φ| < π/2.

    Real through Carlson's R_F while m·sin²φ ≤ 1. Past the branch point
    (m > 1) the integrand is 1/√(negative) = -i/√|·| on the principal
    branch, so the imaginary part is negative for φ > 0:

        F = (K(1/m) - i·F(ψ | 1 - 1/m)) / √m,
        sin²ψ = (sin²φ - 1/m) / (sin²φ (1 - 1/m)).
    """
    if not abs(phi) < 0.5 * np.pi:
        raise DomainError("elliptic_F needs |phi| < pi/2", phi=phi)
    s = np.sin(phi)
    if m * s * s <= 1.0:
        return complex(s * elliprf(np.cos(phi) ** 2, 1.0 - m * s * s, 1.0), 0.0)

    y2 = s * s
    mc = 1.0 - 1.0 / m
    real = elliprf(0.0, mc, 1.0) / np.sqrt(m)
    psi = np.arcsin(np.sqrt(min(1.0, (y2 - 1.0 / m) / (y2 * mc))))
    imag = -elliptic_F(psi, mc).real / np.sqrt(m)
    return complex(np.sign(phi) * real, np.sign(phi) * imag)


def lambda_elliptic(d: float, x: float) -> float:
    """λ_d(x) = -(2/(1-d))·Im F(arcsin(d₁x) | 1/d₁⁴)."""
    a = d1(d)
    if not (a - ENDPOINT_SLACK <= x <= 1.0 + ENDPOINT_SLACK):
        raise DomainError("lambda_elliptic needs x in [d1, 1]", d=d, x=x, d1=a)
    phi = np.arcsin(min(a * x, 1.0))
    return float(-2.0 / (1.0 - d) * elliptic_F(phi, a ** -4).imag)


def lambda_rho_derivative(d: float, rho: float) -> float:
    """dλ_d/dρ = 1/√(d² cosh²ρ - 1), ρ > arccosh(1/d)."""
    _check_d(d)
    if not rho > np.arccosh(1.0 / d):
        raise DomainError("dλ/dρ needs rho > arccosh(1/d)", d=d, rho=rho)
    return float(1.0 / np.sqrt(d * d * np.cosh(rho) ** 2 - 1.0))


def sweep(x, y):
    """T_y(x) = (x + iy)/(1 - iyx) split into real and imaginary parts."""
    den = x * x * y * y + 1.0
    return (x - x * y * y) / den, (x * x + 1.0) * y / den


def upsilon(d: float, x: float, y: float, sign: int = 1, tol: Optional[Tolerances] = None) -> Point3:
    """Υ_d(x, y) on Σ_d (d₁ ≤ x < 1) or its annular extension (x < 1/d₁), -1 < y < 1."""
    a = d1(d)
    if x < a - ENDPOINT_SLACK:
        raise DomainError("upsilon needs x >= d1", d=d, x=x, d1=a)
    if not -1.0 < y < 1.0:
        raise DomainError("upsilon needs y in (-1, 1)", y=y)
    u, v = sweep(x, y)
    return Point3(float(u), float(v), float(sign * lambda_extended(d, max(x, a), tol)))


def upsilon_patch(d: float, sign: int = 1, tol: Optional[Tolerances] = None) -> ImmersionPatch:
    """Υ_d with exact jets, (x, y) in (d₁, 1/d₁) × (-1, 1)."""
    a = d1(d)

    def profile(x):
        first, second = lambda_derivatives(d, x)
        return lambda_extended(d, x, tol), first, second

    def formula(x, y):
        u, v = sweep(x, y)
        return u, v, sign * jets.lift(x, profile)

    return ImmersionPatch(
        name=f"tall(d={d:g}, sign={sign:+d})",
        chart=Model.DISK,
        formula=formula,
        contains=lambda x, y: a < x < 1.0 / a and -1.0 < y < 1.0,
    )


def slice_circle_residual(d: float, x: float, ys) -> float:
    """
    Max deviation of the slice {Υ_d(x, y)} from the circle through ±i and (x, 0).

    The circle has its center c = (x² - 1)/(2x) on the real axis and radius √(c² + 1).
    """
    a = d1(d)
    if x < a - ENDPOINT_SLACK:
        raise DomainError("slice needs x >= d1", d=d, x=x)
    ys = np.asarray(ys, dtype=float)
    u, v = sweep(x, ys)
    c = (x * x - 1.0) / (2.0 * x)
    radius = np.sqrt(c * c + 1.0)
    return float(np.max(np.abs(np.hypot(u - c, v) - radius)))


def regenerated_point(d: float, x: float, y: float, sign: int = 1, tol: Optional[Tolerances] = None) -> Point3:
    """
    Υ_d(x, y) moved by D(z) = (z - d₁)/(1 - d₁z), which sends the turning point
    to 0, then carried to the half-plane chart by g.
    """
    a = d1(d)
    p = upsilon(d, x, y, sign, tol)
    z = p.horizontal()
    w = mobius_g((z - a) / (1.0 - a * z))
    return Point3(float(w.real), float(w.imag), p.t)


def regeneration_error(d: float, fractions, scaled_y, tol: Optional[Tolerances] = None) -> float:
    """
    Largest |t - arccos Y| over regenerated points of the upper sheet.

    Samples are x = d₁ + s(1 - d₁) for s in ``fractions`` and y = d·Y/2 for
    Y in ``scaled_y``; the y-window shrinks with d so the points stay over the
    limit graph t = arccos Y. Heights of points with Y ≥ 1 are compared with 0.
    """
    a = d1(d)
    worst = 0.0
    for s in np.asarray(fractions, dtype=float):
        x = a + s * (1.0 - a)
        for sy in np.asarray(scaled_y, dtype=float):
            p = regenerated_point(d, x, 0.5 * d * sy, 1, tol)
            worst = max(worst, abs(p.t - float(np.arccos(np.clip(p.y, -1.0, 1.0)))))
    logger.debug("d=%g: regeneration error %.3g", d, worst)
    return worst


def tall_spec(d: float, tol: Optional[Tolerances] = None) -> TallRectSpec:
    return TallRectSpec(
        d=float(d),
        d1=d1(d),
        height=height_tall(d, tol),
        quadrature=partial(lambda_quadrature, d, tol=tol),
        elliptic=partial(lambda_elliptic, d),
    )

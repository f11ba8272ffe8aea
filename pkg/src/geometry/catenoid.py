"""
Rotational catenoids of H²×R.

The profile r(t) of the catenoid with parameter k solves

    4 r r'' - 4 r'² + r⁴ - 1 = 0,   r(0) = r₀ = √(k+1) - √k,   r'(0) = 0,

and conserves (1 - r²)²/(4r²) + (r'/r)² = k. In the disk model the
surface is X(θ, t) = (r(t) e^{i√k θ}, t); its part inside the unit
cylinder is a bigraph t = ±t_k(r) over the annulus r₀ ≤ |z| < 1.
"""

import logging
from functools import lru_cache
from typing import Optional

import numpy as np
from scipy.integrate import solve_ivp

from ..config import Tolerances
from ..models.entities import CatenoidProfile, Model, Point3
from ..models.errors import DomainError, ProfileDriftError
from . import jets
from .curvature import ImmersionPatch
from .hyperbolic import mobius_g_inverse, mu0, neck_radius
from .quadrature import integrate

logger = logging.getLogger(__name__)

# rtol schedule for the drift monitor; DOP853 floors rtol at 100·eps
RTOL_SCHEDULE = (1e-12, 1e-13, 2.5e-14)
EVENT_FLOOR = 1e-8


def max_radius(k: float) -> float:
    """√(k+1) + √k, the maximal radius of the ambient profile."""
    if not k > 0:
        raise DomainError("catenoid parameter k must be positive", k=k)
    return float(np.sqrt(k + 1.0) + np.sqrt(k))


def first_integral(r, rprime):
    """(1 - r²)²/(4r²) + (r'/r)²; accepts scalars or arrays."""
    r = np.asarray(r, dtype=float)
    rprime = np.asarray(rprime, dtype=float)
    if np.any(r <= 0):
        raise DomainError("first integral needs r > 0", r_min=float(np.min(r)))
    value = (1.0 - r * r) ** 2 / (4.0 * r * r) + (rprime / r) ** 2
    return float(value) if value.ndim == 0 else value


def _rhs(t, y):
    r, rp = y
    return [rp, (4.0 * rp * rp - r ** 4 + 1.0) / (4.0 * r)]


def _turning(t, y):
    return y[1]


def _minimum(t, y):
    return _turning(t, y)


def _maximum(t, y):
    return _turning(t, y)


_minimum.direction = 1.0
_maximum.direction = -1.0


def profile_period(k: float, tol: Optional[Tolerances] = None) -> float:
    """
    Period of r(t) by quadrature.

    Half a period is ∫ 2 du/√((u² - r₀²)(r_max² - u²)) from r₀ to r_max;
    u = mid + half·sin φ removes both endpoint singularities.
    """
    tol = tol or Tolerances()
    r0, rmax = neck_radius(k), max_radius(k)
    mid, half = 0.5 * (rmax + r0), 0.5 * (rmax - r0)

    def integrand(phi):
        u = mid + half * np.sin(phi)
        return 2.0 / np.sqrt((u + r0) * (u + rmax))

    return 2.0 * integrate(integrand, -0.5 * np.pi, 0.5 * np.pi, tol.quadrature * 1e-2, label="period")


def integrate_profile(
    k: float,
    t_max: Optional[float] = None,
    rtol: Optional[float] = None,
    n_samples: int = 2001,
    tol: Optional[Tolerances] = None,
) -> CatenoidProfile:
    """
    Integrate the profile ODE with DOP853 and a first-integral monitor.

    Args:
        k: catenoid parameter, k > 0
        t_max: integration horizon (defaults to one period)
        rtol: first relative tolerance tried; the monitor tightens it
        n_samples: number of (t, r, r') samples stored on [0, t_max]
        tol: drift and quadrature tolerances

    Returns:
        CatenoidProfile with samples, height, modulus and period

    Raises:
        ProfileDriftError: |first_integral - k| exceeds tolerance at every rtol
    """
    tol = tol or Tolerances()
    r0 = neck_radius(k)
    period = profile_period(k, tol)
    if t_max is None:
        t_max = period
    if not t_max > 0:
        raise DomainError("t_max must be positive", t_max=t_max)

    schedule = [r for r in RTOL_SCHEDULE if rtol is None or r <= rtol]
    if rtol is not None and rtol not in schedule:
        schedule.insert(0, rtol)

    ts = np.linspace(0.0, t_max, n_samples)
    drift = np.inf
    for step_rtol in schedule:
        sol = solve_ivp(
            _rhs, (0.0, t_max), [r0, 0.0],
            method="DOP853", rtol=step_rtol, atol=1e-14,
            dense_output=True, events=[_minimum, _maximum],
        )
        if not sol.success:
            logger.warning("profile integration failed for k=%g at rtol=%g: %s", k, step_rtol, sol.message)
            continue
        r, rp = sol.sol(ts)
        drift = float(np.max(np.abs(first_integral(r, rp) - k)))
        logger.debug("k=%g rtol=%g: first-integral drift %.3g", k, step_rtol, drift)
        if drift <= tol.first_integral:
            break
    else:
        raise ProfileDriftError(
            "first integral drift exceeds tolerance",
            k=k, drift=drift, tolerance=tol.first_integral, t_max=t_max,
        )

    minima = sol.t_events[0][sol.t_events[0] > EVENT_FLOOR]
    if minima.size:
        logger.debug("k=%g: ODE period %.15g vs quadrature %.15g", k, minima[0], period)

    r_max = float(np.max(sol.y_events[1][:, 0])) if sol.t_events[1].size else float(np.max(r))
    h = height(k, tol)

    logger.info("integrated catenoid profile k=%g over t in [0, %g]", k, t_max)
    return CatenoidProfile(
        k=float(k),
        r0=r0,
        samples=np.column_stack([ts, r, rp]),
        height=h,
        modulus_estimate=float(np.exp(-np.sqrt(k) * h)),
        period=period,
        t_max=float(t_max),
        r_max=r_max,
        first_integral_drift=drift,
        minima=minima,
        solution=sol.sol,
    )


@lru_cache(maxsize=32)
def cached_profile(k: float) -> CatenoidProfile:
    return integrate_profile(k)


def t_of_r(k: float, r: float, tol: Optional[Tolerances] = None) -> float:
    """
    t_k(r) = ∫ 2 du / √(4ku² - (1 - u²)²) from r₀ to r.

    The radicand factors as (u - r₀)(u + r_max)(r_max - u)(u + r₀); the
    substitution u = r₀ + (r - r₀)s² removes the inverse square root at r₀.
    """
    tol = tol or Tolerances()
    r0, rmax = neck_radius(k), max_radius(k)
    if not (r0 - 1e-14 <= r <= 1.0):
        raise DomainError("t_of_r needs r in [r0, 1]", k=k, r=r, r0=r0)
    delta = r - r0
    if delta <= 0:
        return 0.0

    def integrand(s):
        u = r0 + delta * s * s
        return 4.0 * np.sqrt(delta) / np.sqrt((u + rmax) * (rmax - u) * (u + r0))

    return integrate(integrand, 0.0, 1.0, tol.quadrature * 1e-2, label="t_of_r")


def height(k: float, tol: Optional[Tolerances] = None) -> float:
    """h(k) = 2·t_k(1)."""
    return 2.0 * t_of_r(k, 1.0, tol)


def conformal_modulus(k: float, tol: Optional[Tolerances] = None) -> float:
    """R_k = exp(-√k·h(k)): strip of height h and θ-period 2π/√k mapped to an annulus."""
    return float(np.exp(-np.sqrt(k) * height(k, tol)))


def immerse_catenoid(k: float, theta: float, t: float, profile: Optional[CatenoidProfile] = None) -> Point3:
    """X(θ, t) = (r(t) e^{i√k θ}, t) in the disk model."""
    profile = profile or cached_profile(float(k))
    r, _, _ = profile.evaluate(t)
    if r >= 1.0:
        raise DomainError("catenoid sample leaves the unit cylinder", k=k, t=t, r=r)
    a = np.sqrt(k) * theta
    return Point3(float(r * np.cos(a)), float(r * np.sin(a)), float(t))


def ambient_unduloid(k: float, theta: float, t: float, profile: Optional[CatenoidProfile] = None) -> Point3:
    """Same formula as ``immerse_catenoid`` without the cylinder restriction."""
    profile = profile or cached_profile(float(k))
    r, _, _ = profile.evaluate(t)
    a = np.sqrt(k) * theta
    return Point3(float(r * np.cos(a)), float(r * np.sin(a)), float(t))


def bigraph_point(k: float, r: float, theta: float, sign: int = 1) -> Point3:
    """(r cos θ, r sin θ, ±t_k(r)) over the annulus r₀ ≤ r ≤ 1."""
    return Point3(float(r * np.cos(theta)), float(r * np.sin(theta)), float(sign * t_of_r(k, r)))


def catenoid_patch(k: float, profile: Optional[CatenoidProfile] = None) -> ImmersionPatch:
    """ImmersionPatch of X in (θ, t) with exact jets from the profile ODE."""
    profile = profile or cached_profile(float(k))
    a = np.sqrt(k)

    def formula(theta, t):
        r = jets.lift(t, profile.evaluate)
        return r * jets.cos(a * theta), r * jets.sin(a * theta), t

    return ImmersionPatch(name=f"catenoid(k={k:g})", chart=Model.DISK, formula=formula)


def pulled_back_radius(k: float, x: float, y: float) -> float:
    """‖g⁻¹(μ₀·(x + iy))‖, the disk radius behind a point of the dilated graph."""
    return abs(mobius_g_inverse(mu0(k) * complex(x, y)))


def dilated_graph_phi(k: float, x: float, y: float, tol: Optional[Tolerances] = None) -> Point3:
    """Φ_k(x, y) = (x, y, t_k(r)) on the dilated catenoid, half-plane chart."""
    if not y > 0:
        raise DomainError("dilated graph lives over the upper half-plane", x=x, y=y)
    r = pulled_back_radius(k, x, y)
    r0 = neck_radius(k)
    if r < r0 - 1e-14 or r >= 1.0:
        raise DomainError(
            "point outside the dilated annulus", k=k, x=x, y=y, radius=r, r0=r0
        )
    return Point3(float(x), float(y), t_of_r(k, max(r, r0), tol))


def phi_k_derivative(
    x: float,
    y: float,
    k1: float = 1e-4,
    k2: float = 1e-5,
    tol: Optional[Tolerances] = None,
) -> float:
    """
    ∂t_k/∂k at k = 0 by difference quotients and Richardson extrapolation.

    D(k) = (t_k - arccos y)/k has a √k error term, removed with q = √(k1/k2).
    """
    base = np.arccos(y)
    d1 = (dilated_graph_phi(k1, x, y, tol).t - base) / k1
    d2 = (dilated_graph_phi(k2, x, y, tol).t - base) / k2
    q = np.sqrt(k1 / k2)
    return float((q * d2 - d1) / (q - 1.0))

"""Parabolic catenoids Ψ_λ(x, t) = (λx, λ sin t, t) and the ambient surface Q."""

from typing import Optional

import numpy as np

from ..models.entities import Gauge, Model, ParabolicParam, Point2H, Point3
from ..models.errors import DomainError
from . import jets
from .curvature import ImmersionPatch
from .hyperbolic import halfplane_to_disk

HALF_PI = 0.5 * np.pi


def psi(lam: float, x: float, t: float) -> Point3:
    """Ψ_λ(x, t) in the half-plane chart, 0 < t < π."""
    ParabolicParam(lam, Gauge.PSI)
    if not 0.0 < t < np.pi:
        raise DomainError("Ψ gauge needs t in (0, π)", t=t)
    return Point3(float(lam * x), float(lam * np.sin(t)), float(t))


def fhat(x: float, t: float) -> Point3:
    """F̂(x, t) = (x, cos t, t), -π/2 < t < π/2."""
    if not -HALF_PI < t < HALF_PI:
        raise DomainError("F̂ gauge needs t in (-π/2, π/2)", t=t)
    return Point3(float(x), float(np.cos(t)), float(t))


def shift_gauge(t: float, source: Gauge, target: Gauge) -> float:
    """Vertical coordinate change between the two gauges: t_Ψ = t_F̂ + π/2."""
    if source == target:
        return t
    return t + HALF_PI if source == Gauge.FHAT else t - HALF_PI


def gauss_map_psi(t: float) -> np.ndarray:
    """Unit normal of Ψ₁ at height t: (0, sin²t, -cos t)."""
    return np.array([0.0, np.sin(t) ** 2, -np.cos(t)])


def gauss_map_graph(x: float, y: float) -> np.ndarray:
    """Unit normal of the graph t = arccos y: (0, -y², -√(1 - y²))."""
    return np.array([0.0, -y * y, -np.sqrt(1.0 - y * y)])


def q_residual(p: Point3) -> float:
    """(1 - x² - y²) - cos t·((1 + x)² + y²); zero exactly on Q."""
    x, y, t = p.x, p.y, p.t
    return float((1.0 - x * x - y * y) - np.cos(t) * ((1.0 + x) ** 2 + y * y))


def fhat_in_disk(x: float, t: float) -> Point3:
    """F̂(x, t) carried to the disk model by the inverse Möbius map."""
    p = fhat(x, t)
    z = halfplane_to_disk(Point2H(p.x, p.y, Model.HALF_PLANE))
    return Point3(z.u, z.v, t)


def q_domain(x, y):
    """Where Q is a graph: x ≥ -1 and (x + 1/2)² + y² ≥ 1/4."""
    x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    return (x >= -1.0) & ((x + 0.5) ** 2 + y * y >= 0.25)


def q_base_height(x, y):
    """arccos((1 - x² - y²)/((1 + x)² + y²)); NaN outside the graph domain."""
    x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        c = (1.0 - x * x - y * y) / ((1.0 + x) ** 2 + y * y)
    c = np.where(q_domain(x, y), np.clip(c, -1.0, 1.0), np.nan)
    return np.arccos(c)


def q_sheets(x: float, y: float, periods: int = 1) -> np.ndarray:
    """All heights t in [-π·periods, π·periods] with (x, y, t) on Q, sorted."""
    base = float(q_base_height(x, y))
    if np.isnan(base):
        return np.empty(0)
    heights = []
    for n in range(-periods, periods + 1):
        for h in {base, -base}:
            t = h + 2.0 * np.pi * n
            if abs(t) <= np.pi * periods + 1e-12:
                heights.append(t)
    return np.array(sorted(heights))


def asymptotic_boundary(lam: float = 1.0) -> dict:
    """Ideal boundary of Ψ_λ as export metadata (never used as geometry)."""
    ParabolicParam(lam)
    return {
        "ideal_lines": [
            {"chart": Model.HALF_PLANE.value, "y": 0.0, "t": 0.0},
            {"chart": Model.HALF_PLANE.value, "y": 0.0, "t": float(np.pi)},
        ],
        "vertical_segment": {
            "ideal_point": {"halfplane": "infinity", "disk": [-1.0, 0.0]},
            "t_range": [0.0, float(np.pi)],
        },
        "lambda": lam,
    }


def psi_patch(lam: float = 1.0) -> ImmersionPatch:
    ParabolicParam(lam)

    def formula(x, t):
        return lam * x, lam * jets.sin(t), t

    return ImmersionPatch(
        name=f"psi(lambda={lam:g})",
        chart=Model.HALF_PLANE,
        formula=formula,
        contains=lambda x, t: 0.0 < t < np.pi,
    )


def fhat_patch() -> ImmersionPatch:
    def formula(x, t):
        return x, jets.cos(t), t

    return ImmersionPatch(
        name="fhat",
        chart=Model.HALF_PLANE,
        formula=formula,
        orientation=-1,
        contains=lambda x, t: -HALF_PI < t < HALF_PI,
    )


def graph_patch() -> ImmersionPatch:
    """Φ₀(x, y) = (x, y, arccos y) over 0 < y < 1."""
    def formula(x, y):
        return x, y, jets.arccos(y)

    return ImmersionPatch(
        name="graph",
        chart=Model.HALF_PLANE,
        formula=formula,
        contains=lambda x, y: 0.0 < y < 1.0,
    )


def parabolic_patch(param: Optional[ParabolicParam] = None) -> ImmersionPatch:
    """Ψ_λ in the requested gauge."""
    param = param or ParabolicParam()
    if param.gauge == Gauge.PSI:
        return psi_patch(param.lam)
    lam = param.lam

    def formula(x, t):
        return lam * x, lam * jets.cos(t), t

    return ImmersionPatch(
        name=f"fhat(lambda={lam:g})",
        chart=Model.HALF_PLANE,
        formula=formula,
        orientation=-1,
        contains=lambda x, t: -HALF_PI < t < HALF_PI,
    )

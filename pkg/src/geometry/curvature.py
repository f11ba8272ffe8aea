"""
Extrinsic geometry of immersed patches in H²×R.

A patch is a parametrization written with the functions of ``jets`` so
that the same formula yields the point and its exact first and second
partials. The engine assembles the induced metric, the g-unit normal,
the second fundamental form from covariant second derivatives, and the
derived scalars H (mean of principal curvatures), |A|² and Ric(ν,ν).
"""

import logging
from dataclasses import dataclass
from typing import Any, Callable, Optional

import numpy as np

from ..config import Tolerances
from ..models.entities import ExtrinsicReport, MetricData, Model, Point3
from ..models.errors import DegenerateImmersionError, DomainError
from .hyperbolic import metric_at
from .jets import Jet, variables

logger = logging.getLogger(__name__)

DEGENERACY = 1e-14


@dataclass(frozen=True)
class PatchJet:
    point: np.ndarray   # (3,)
    first: np.ndarray   # (2, 3): X_u, X_v
    second: np.ndarray  # (3, 3): X_uu, X_uv, X_vv


@dataclass
class ImmersionPatch:
    """
    A parametrized surface (u, v) -> (x, y, t) in the given chart.

    ``formula`` must accept floats or jets and return three coordinates.
    ``orientation`` flips the normal to match a family's conventional ν.
    """
    name: str
    chart: Model
    formula: Callable[[Any, Any], tuple]
    orientation: int = 1
    contains: Optional[Callable[[float, float], bool]] = None

    def _check(self, u: float, v: float):
        if self.contains is not None and not self.contains(u, v):
            raise DomainError(f"({u}, {v}) is outside the domain of {self.name}", u=u, v=v)

    def eval(self, u: float, v: float) -> Point3:
        self._check(u, v)
        x, y, t = self.formula(float(u), float(v))
        return Point3(float(x), float(y), float(t))

    def jet(self, u: float, v: float) -> PatchJet:
        self._check(u, v)
        ju, jv = variables(u, v)
        comps = [c if isinstance(c, Jet) else Jet.constant(c) for c in self.formula(ju, jv)]

        point = np.array([c.value for c in comps])
        first = np.array([[c.grad[a] for c in comps] for a in range(2)])
        second = np.array(
            [[c.hess[a, b] for c in comps] for a, b in ((0, 0), (0, 1), (1, 1))]
        )
        return PatchJet(point, first, second)


def _admissible_metric(patch: ImmersionPatch, point: np.ndarray, margin: float) -> MetricData:
    x, y = point[0], point[1]
    if patch.chart == Model.DISK and 1.0 - np.hypot(x, y) < margin:
        raise DomainError(
            "sample too close to the ideal boundary of the disk",
            patch=patch.name, x=x, y=y, margin=margin,
        )
    if patch.chart == Model.HALF_PLANE and y < margin:
        raise DomainError(
            "sample too close to the ideal boundary of the half-plane",
            patch=patch.name, x=x, y=y, margin=margin,
        )
    return metric_at(Point3(*point), patch.chart)


def unit_normal(
    patch: ImmersionPatch,
    u: float,
    v: float,
    tol: Optional[Tolerances] = None,
) -> tuple[np.ndarray, MetricData, PatchJet]:
    """g-unit normal ν = ∓ g⁻¹(X_u × X_v)/|·|_g with the patch orientation."""
    tol = tol or Tolerances()
    jet = patch.jet(u, v)
    metric = _admissible_metric(patch, jet.point, tol.boundary_margin)
    return _normal(patch, jet, metric, u, v), metric, jet


def _normal(patch: ImmersionPatch, jet: PatchJet, metric: MetricData, u: float, v: float) -> np.ndarray:
    cross = np.cross(jet.first[0], jet.first[1])
    raised = metric.g_inv @ cross
    norm2 = float(cross @ raised)
    if not norm2 > DEGENERACY:
        raise DegenerateImmersionError(
            "normal is degenerate", patch=patch.name, u=u, v=v, norm2=norm2
        )
    return -patch.orientation * raised / np.sqrt(norm2)


def fundamental_forms(
    patch: ImmersionPatch,
    u: float,
    v: float,
    tol: Optional[Tolerances] = None,
) -> ExtrinsicReport:
    """
    First and second fundamental forms at (u, v).

    Args:
        patch: immersion with exact jets
        u, v: interior parameter values
        tol: supplies the boundary margin

    Returns:
        ExtrinsicReport with E, F, G, ν, |A|², H and Ric(ν,ν)

    Raises:
        DegenerateImmersionError: EG - F² below 1e-14
        DomainError: sample outside the patch or too close to the ideal boundary
    """
    tol = tol or Tolerances()
    jet = patch.jet(u, v)
    metric = _admissible_metric(patch, jet.point, tol.boundary_margin)
    g, gamma = metric.g, metric.gamma

    Xu, Xv = jet.first
    E, F, G = Xu @ g @ Xu, Xu @ g @ Xv, Xv @ g @ Xv
    det = E * G - F * F
    if det < DEGENERACY:
        raise DegenerateImmersionError(
            "first fundamental form is degenerate", patch=patch.name, u=u, v=v, det=det
        )

    nu = _normal(patch, jet, metric, u, v)
    g_nu = g @ nu

    pairs = ((Xu, Xu), (Xu, Xv), (Xv, Xv))
    b = []
    for X_ab, (Xa, Xb) in zip(jet.second, pairs):
        covariant = X_ab + np.einsum("kij,i,j->k", gamma, Xa, Xb)
        b.append(float(covariant @ g_nu))

    first_form = np.array([[E, F], [F, G]])
    second_form = np.array([[b[0], b[1]], [b[1], b[2]]])
    shape = np.linalg.solve(first_form, second_form)

    return ExtrinsicReport(
        E=float(E),
        F=float(F),
        G=float(G),
        nu=nu,
        A2=float(np.trace(shape @ shape)),
        H=0.5 * float(np.trace(shape)),
        ric_nu=_ricci(nu, g),
    )


def _ricci(nu: np.ndarray, g: np.ndarray) -> float:
    # Ric(ν,ν) of H²×R is -|horizontal part of ν|²
    return -float(g[0, 0] * nu[0] ** 2 + g[1, 1] * nu[1] ** 2)


def ricci_normal(patch: ImmersionPatch, u: float, v: float, tol: Optional[Tolerances] = None) -> float:
    nu, metric, _ = unit_normal(patch, u, v, tol)
    return _ricci(nu, metric.g)


def conformality_defect(
    patch: ImmersionPatch, u: float, v: float, tol: Optional[Tolerances] = None
) -> float:
    """max(|E - G|, |F|) / max(E, G)."""
    report = fundamental_forms(patch, u, v, tol)
    return max(abs(report.E - report.G), abs(report.F)) / max(report.E, report.G)


def jet_consistency(patch: ImmersionPatch, u: float, v: float, h: float = 1e-4) -> float:
    """Relative deviation of the exact jet from central differences of ``eval``."""
    jet = patch.jet(u, v)

    def at(du, dv):
        return patch.eval(u + du, v + dv).as_array()

    center = at(0.0, 0.0)
    fd_first = np.array([
        (at(h, 0.0) - at(-h, 0.0)) / (2 * h),
        (at(0.0, h) - at(0.0, -h)) / (2 * h),
    ])
    fd_second = np.array([
        (at(h, 0.0) - 2 * center + at(-h, 0.0)) / h ** 2,
        (at(h, h) - at(h, -h) - at(-h, h) + at(-h, -h)) / (4 * h * h),
        (at(0.0, h) - 2 * center + at(0.0, -h)) / h ** 2,
    ])

    scale = max(1.0, float(np.max(np.abs(jet.first))), float(np.max(np.abs(jet.second))))
    err = max(
        float(np.max(np.abs(fd_first - jet.first))),
        float(np.max(np.abs(fd_second - jet.second))),
    )
    return err / scale


def max_mean_curvature(
    patch: ImmersionPatch,
    samples: np.ndarray,
    tol: Optional[Tolerances] = None,
) -> float:
    """max |H| over an (n, 2) array of parameter samples."""
    worst = 0.0
    for u, v in samples:
        worst = max(worst, abs(fundamental_forms(patch, u, v, tol).H))
    logger.debug("%s: max |H| = %.3g over %d samples", patch.name, worst, len(samples))
    return worst

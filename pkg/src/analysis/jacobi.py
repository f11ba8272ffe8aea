"""
Jacobi operator of the parabolic catenoid.

In the Ψ gauge the operator is L = -sin²t (∂x² + ∂t² + 1) on the strip
0 < t < π; in the F̂ gauge the same operator reads -cos²t (∂x² + ∂t² + 1)
on -π/2 < t < π/2. The module carries the closed-form Jacobi fields, the
deformation-series coefficients with their s-integrals, and the moment
condition obtained from Green's identity against ψ = sin t.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional

import numpy as np
from scipy.fft import dst, fft
from scipy.integrate import trapezoid

from ..config import Tolerances
from ..geometry import jets
from ..geometry.curvature import ImmersionPatch, unit_normal
from ..geometry.jets import Jet
from ..geometry.quadrature import gauss_legendre_2d, integrate
from ..models.entities import Gauge, MomentResidual
from ..models.errors import DomainError
from ..models.fields import StripField

logger = logging.getLogger(__name__)

HALF_PI = 0.5 * np.pi


class FieldName(Enum):
    PSI = "psi"
    UTILDE = "utilde"
    W_CAT = "w_cat"
    W_TALL = "w_tall"


class SeriesKind(Enum):
    CAT = "cat"
    TALL = "tall"


def _psi_fhat(x, t):
    return jets.cos(t)


def _utilde_fhat(x, t):
    return x * jets.cos(t)


def _w_cat_fhat(x, t):
    return 0.25 * (t * jets.sin(t) - x * x * jets.cos(t))


def _psi_psi(x, t):
    return jets.sin(t)


def _utilde_psi(x, t):
    return x * jets.sin(t)


def _w_cat_psi(x, t):
    return 0.125 * ((np.pi - 2.0 * t) * jets.cos(t) - 2.0 * x * x * jets.sin(t))


_FORMULAS = {
    (FieldName.PSI, Gauge.PSI): _psi_psi,
    (FieldName.PSI, Gauge.FHAT): _psi_fhat,
    (FieldName.UTILDE, Gauge.PSI): _utilde_psi,
    (FieldName.UTILDE, Gauge.FHAT): _utilde_fhat,
    (FieldName.W_CAT, Gauge.PSI): _w_cat_psi,
    (FieldName.W_CAT, Gauge.FHAT): _w_cat_fhat,
}


@dataclass(frozen=True)
class AnalyticField:
    """A closed-form Jacobi field; w_tall is -w_cat."""
    name: FieldName
    gauge: Gauge = Gauge.PSI

    def _formula(self) -> Callable:
        if self.name == FieldName.W_TALL:
            base = _FORMULAS[(FieldName.W_CAT, self.gauge)]
            return lambda x, t: -1.0 * base(x, t)
        return _FORMULAS[(self.name, self.gauge)]

    def check_t(self, t: float):
        lo, hi = (0.0, np.pi) if self.gauge == Gauge.PSI else (-HALF_PI, HALF_PI)
        if not lo < t < hi:
            raise DomainError(
                f"t outside the open strip of the {self.gauge.value} gauge", t=t, gauge=self.gauge.value
            )

    def value(self, x, t):
        return self._formula()(x, t)

    def jet(self, x: float, t: float) -> Jet:
        jx, jt = jets.variables(x, t)
        out = self._formula()(jx, jt)
        return out if isinstance(out, Jet) else Jet.constant(out)

    def weight(self, t):
        """The factor sin²t (Ψ gauge) or cos²t (F̂ gauge) in front of L₀."""
        return np.sin(t) ** 2 if self.gauge == Gauge.PSI else np.cos(t) ** 2


def jacobi_apply(field, x: float, t: float) -> float:
    """
    L applied at one point.

    Analytic fields use their exact jet. Strip fields (Ψ gauge) use
    second-order central differences at an interior grid node (x, t).
    """
    if isinstance(field, AnalyticField):
        field.check_t(t)
        j = field.jet(x, t)
        return float(-field.weight(t) * (j.hess[0, 0] + j.hess[1, 1] + j.value))

    if isinstance(field, StripField):
        if field.is_coarse:
            logger.warning(
                "strip field grid %dx%d is coarse; finite differences are unreliable",
                field.nx, field.nt,
            )
        i, j = field.grid_index(x, t)
        if not (1 <= i <= field.nx - 2 and 1 <= j <= field.nt - 2):
            raise DomainError("jacobi_apply needs an interior grid node", x=x, t=t)
        u = field.values
        uxx = (u[i + 1, j] - 2.0 * u[i, j] + u[i - 1, j]) / field.dx ** 2
        utt = (u[i, j + 1] - 2.0 * u[i, j] + u[i, j - 1]) / field.dt ** 2
        return float(-np.sin(field.t[j]) ** 2 * (uxx + utt + u[i, j]))

    raise DomainError(f"cannot apply L to {type(field).__name__}")


def jacobi_residual_grid(field: StripField, reduced: bool = False) -> np.ndarray:
    """
    L (or L₀ = -(∂x² + ∂t² + 1) when ``reduced``) on all interior nodes.

    Returns an (nx - 2, nt - 2) array.
    """
    if field.is_coarse:
        logger.warning("strip field grid %dx%d is coarse", field.nx, field.nt)
    u = field.values
    core = u[1:-1, 1:-1]
    uxx = (u[2:, 1:-1] - 2.0 * core + u[:-2, 1:-1]) / field.dx ** 2
    utt = (u[1:-1, 2:] - 2.0 * core + u[1:-1, :-2]) / field.dt ** 2
    out = -(uxx + utt + core)
    if reduced:
        return out
    return np.sin(field.t[1:-1])[None, :] ** 2 * out


def _check_series(i: int, y, s):
    if i not in (0, 1, 2):
        raise DomainError("series coefficients exist for orders 0, 1, 2", order=i)
    y, s = np.asarray(y, dtype=float), np.asarray(s, dtype=float)
    if np.any((y <= 0) | (y >= 1)):
        raise DomainError("series coefficients need 0 < y < 1")
    if np.any((s <= 0) | (s >= 1)):
        raise DomainError("series coefficients need 0 < s < 1")


def series_a(i: int, x, y, s):
    """Coefficient a_i(x, y, s) of the catenoid expansion in powers of √k."""
    _check_series(i, y, s)
    c = s * y - s + 2.0
    root = np.sqrt(s * (1.0 - y) * c)
    if i == 0:
        return (1.0 - y) / np.sqrt(s * (1.0 - y) * (2.0 - s + s * y))
    if i == 1:
        num = (
            -s ** 2 * y ** 3 + 3 * s ** 2 * y ** 2 - 3 * s ** 2 * y + s ** 2
            - 3 * s * y ** 2 + 6 * s * y - 3 * s + y ** 2 - 2 * y + 1
        )
        return num / (2.0 * c * root)
    num = (
        -2 * s ** 4 * (y - 1) ** 5
        + 2 * s ** 3 * (y - 5) * (y - 1) ** 4
        + s ** 2 * (10 * y - 13) * (y - 1) ** 3
        + 2 * s * (y - 1) * (y * (x ** 2 + 8 * y - 6) - 2)
        + y * (4 * x ** 2 + (5 - 3 * y) * y + 7)
        - 9
    )
    return num / (8.0 * c ** 2 * root)


def series_h(i: int, x, y, s):
    """Coefficient h_i(x, y, s) of the tall-rectangle expansion in powers of √d."""
    _check_series(i, y, s)
    c = s * (y - 1) + 2.0
    if i == 0:
        return (1.0 - y) / np.sqrt(s * (1.0 - y) * (2.0 - s + s * y))
    if i == 1:
        return (1.0 - y) ** 1.5 * (s ** 2 * y - s ** 2 + 3 * s - 1) / (2.0 * np.sqrt(s) * c ** 1.5)
    num = (
        -2 * s ** 4 * (y - 1) ** 5
        + 2 * s ** 3 * (y - 5) * (y - 1) ** 4
        + s ** 2 * (10 * y - 17) * (y - 1) ** 3
        + 2 * s * (y - 1) * (-(x ** 2 + 14) * y + 8 * y ** 2 + 6)
        - y * (4 * x ** 2 + y * (3 * y - 5) + 9)
        + 7
    )
    return num / (8.0 * c ** 2 * np.sqrt(s * (1.0 - y) * c))


def series_integral(kind: SeriesKind, order: int, x: float, y: float, tol: Optional[Tolerances] = None) -> float:
    """∫₀¹ a_i ds (cat) or ∫₀¹ h_i ds (tall), with s = σ² removing the s^{-1/2} endpoint."""
    tol = tol or Tolerances()
    coeff = series_a if SeriesKind(kind) == SeriesKind.CAT else series_h
    _check_series(order, y, 0.5)

    def integrand(sigma):
        return 2.0 * sigma * coeff(order, x, y, sigma * sigma)

    return integrate(integrand, 0.0, 1.0, tol.quadrature * 1e-2, label=f"series {kind}/{order}")


def series_closed_form(kind: SeriesKind, order: int, x: float, y: float) -> float:
    if order == 0:
        return float(np.arccos(y))
    if order == 1:
        return 0.0
    return second_order_closed_form(kind, x, y)


def second_order_closed_form(kind: SeriesKind, x: float, y: float) -> float:
    """¼(x²y/√(1-y²) - arccos y) for catenoids; the negative for tall rectangles."""
    value = 0.25 * (x * x * y / np.sqrt(1.0 - y * y) - np.arccos(y))
    return float(value if SeriesKind(kind) == SeriesKind.CAT else -value)


def second_order_integral(kind: SeriesKind, x: float, y: float, tol: Optional[Tolerances] = None) -> float:
    """Quadrature of the second-order coefficient a₂ or h₂."""
    return series_integral(kind, 2, x, y, tol)


def jacobi_field_from_normal(
    velocity: Callable[[float, float], np.ndarray],
    patch: ImmersionPatch,
    tol: Optional[Tolerances] = None,
) -> Callable[[float, float], float]:
    """Normal component g(ν, V) of a deformation velocity V, as a function of the patch parameters."""

    def field(u: float, v: float) -> float:
        nu, metric, _ = unit_normal(patch, u, v, tol)
        return float(nu @ metric.g @ np.asarray(velocity(u, v), dtype=float))

    return field


def _truncated_moment(w: StripField, r: float) -> tuple[float, float]:
    """Moment value and edge amplitude on [-r, r] × [0, π]."""
    x, t, u = w.x, w.t, w.values
    lo = int(np.ceil((-r + w.X) / w.dx - 1e-9))
    hi = int(np.floor((r + w.X) / w.dx + 1e-9))
    hi = min(hi, w.nx - 1)
    if hi - lo < 2:
        raise DomainError("truncation radius covers fewer than three grid points", r=r)

    traces = u[lo:hi + 1, -1] + u[lo:hi + 1, 0]
    horizontal = trapezoid(traces, x[lo:hi + 1])

    ux = np.gradient(u, w.dx, axis=0, edge_order=2)
    lateral = trapezoid(np.sin(t) * (ux[hi] - ux[lo]), t)

    scale = float(np.max(np.abs(u)))
    edge = max(float(np.max(np.abs(u[lo]))), float(np.max(np.abs(u[hi]))))
    return float(horizontal + lateral), (edge / scale if scale > 0 else 0.0)


def moment_residual(w: StripField, r: float, tol: Optional[Tolerances] = None) -> MomentResidual:
    """
    ∫(w(x,π) + w(x,0)) dx + ∫₀^π sin t (w_x(r,t) - w_x(-r,t)) dt over |x| < r.

    The value vanishes for decaying Jacobi fields. Non-convergence is flagged
    when w has not decayed at x = ±r or the values at r and r/2 disagree.
    """
    tol = tol or Tolerances()
    if not 0 < r <= w.X:
        raise DomainError("moment radius must lie in (0, X]", r=r, X=w.X)

    value, edge = _truncated_moment(w, r)
    value_half, _ = _truncated_moment(w, 0.5 * r)
    converged = edge <= tol.decay and abs(value - value_half) <= tol.moment

    if not converged:
        logger.info(
            "moment at r=%g not converged (edge amplitude %.3g, r vs r/2 gap %.3g)",
            r, edge, abs(value - value_half),
        )
    return MomentResidual(
        value=value, value_half=value_half, r=float(r), edge_amplitude=edge, converged=converged
    )


def rayleigh_quotient(field: StripField) -> float:
    """
    ⟨L₀u, u⟩/⟨u, u⟩ for L₀ = -∂x² - ∂t² - 1 with Dirichlet rows, computed
    spectrally: sine series in t (DST-I of the interior rows), Fourier in x.
    """
    interior = field.values[:, 1:-1]
    coeffs = fft(dst(interior, type=1, axis=1, norm="ortho"), axis=0, norm="ortho")
    xi = 2.0 * np.pi * np.fft.fftfreq(field.nx, d=field.dx)
    n = np.arange(1, field.nt - 1)
    symbol = xi[:, None] ** 2 + n[None, :] ** 2 - 1.0
    power = np.abs(coeffs) ** 2
    total = float(np.sum(power))
    if total == 0.0:
        raise DomainError("Rayleigh quotient of the zero field is undefined")
    return float(np.sum(symbol * power) / total)


def truncated_l2_norm(field: AnalyticField, C: float, n: int = 64) -> float:
    """∫_{|x|<C} ∫ u²/sin²t dt dx (cos²t in the F̂ gauge), tensor Gauss-Legendre."""
    if not C > 0:
        raise DomainError("truncation width must be positive", C=C)
    t_range = (0.0, np.pi) if field.gauge == Gauge.PSI else (-HALF_PI, HALF_PI)

    def integrand(x, t):
        return field.value(x, t) ** 2 / field.weight(t)

    return gauss_legendre_2d(integrand, (-C, C), t_range, n)

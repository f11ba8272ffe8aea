"""
Strip boundary value problems for the Jacobi operator of the parabolic catenoid.

Dividing L = -sin²t (∂x² + ∂t² + 1) by -sin²t and transforming in x
turns both problems into the family of ODEs

    L̂_ξ û = -û'' + (ξ² - 1) û   on 0 < t < π.

The Dirichlet problem is solved with the multipliers v± (v₊(0) = 0,
v₊(π) = 1, v₋ mirrored), the inhomogeneous one with the Dirichlet Green
function Ĝ of L̂_ξ. Both have a double pole at ξ = 0, so the data must
have a vanishing zero mode; the ξ = 0 value of the solution is then the
limit of the regular modes.
"""

import logging
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.fft import dst, fft, fftfreq, ifft
from scipy.integrate import trapezoid
from scipy.linalg import solve_banded

from ..config import GridDefaults, Tolerances
from ..geometry import jets
from ..models.entities import MomentResidual, Side
from ..models.errors import DomainError, ZeroModeError
from ..models.fields import BoundaryData, SourceData, StripField, t_grid
from .jacobi import jacobi_residual_grid, moment_residual

logger = logging.getLogger(__name__)

NEAR_RESONANCE = 1e-6


def _check_xi(xi: float):
    if xi == 0:
        raise DomainError("the multipliers have a double pole at xi = 0", xi=xi)


def _series(s: float, a):
    # sin(√s·a)/√s to fourth order in s
    return a - s * a ** 3 / 6.0 + s * s * a ** 5 / 120.0 - s ** 3 * a ** 7 / 5040.0


def near_resonance_series(xi: float, t):
    """v₊(ξ, t) as S(t)/S(π), S(a) = sin(√s a)/√s expanded in s = 1 - ξ²."""
    _check_xi(xi)
    s = 1.0 - xi * xi
    return _series(s, t) / _series(s, np.pi)


def closed_form_v(xi: float, t):
    """v₊(ξ, t) from the sine (|ξ| < 1) or overflow-free sinh (|ξ| > 1) form."""
    _check_xi(xi)
    s = 1.0 - xi * xi
    if s > 0:
        mu = np.sqrt(s)
        # sin(μπ) = sin(π(1 - μ)) and 1 - μ = ξ²/(1 + μ)
        return jets.sin(mu * t) / np.sin(np.pi * xi * xi / (1.0 + mu))
    if s < 0:
        w = np.sqrt(-s)
        return jets.exp(w * (t - np.pi)) * (1.0 - jets.exp(-2.0 * w * t)) / (-np.expm1(-2.0 * w * np.pi))
    return t / np.pi


def multiplier_v(xi: float, t, side: Side = Side.PLUS):
    """
    v±(ξ, t) for scalar ξ ≠ 0.

    ``t`` may be a float, an array or a jet; v₋(ξ, t) = v₊(ξ, π - t).
    """
    _check_xi(xi)
    if not isinstance(t, jets.Jet):
        tv = np.asarray(t, dtype=float)
        if np.any((tv < 0.0) | (tv > np.pi)):
            raise DomainError("multipliers are defined for 0 <= t <= pi")
    arg = t if Side(side) == Side.PLUS else np.pi - t
    if abs(1.0 - xi * xi) < NEAR_RESONANCE:
        return near_resonance_series(xi, arg)
    return closed_form_v(xi, arg)


def green_hat(xi: float, t, tp):
    """
    Dirichlet Green function of -∂t² + (ξ² - 1) on (0, π), symmetric in (t, t').

    Arrays broadcast. The sine, sinh and series forms agree across |ξ| = 1.
    """
    _check_xi(xi)
    t, tp = np.asarray(t, dtype=float), np.asarray(tp, dtype=float)
    if np.any((t < 0) | (t > np.pi) | (tp < 0) | (tp > np.pi)):
        raise DomainError("green_hat needs t, t' in [0, pi]")
    lo, hi = np.minimum(t, tp), np.maximum(t, tp)
    s = 1.0 - xi * xi

    if abs(s) < NEAR_RESONANCE:
        return _series(s, lo) * _series(s, np.pi - hi) / _series(s, np.pi)
    if s > 0:
        mu = np.sqrt(s)
        return np.sin(mu * lo) * np.sin(mu * (np.pi - hi)) / (
            mu * np.sin(np.pi * xi * xi / (1.0 + mu))
        )
    w = np.sqrt(-s)
    return (
        0.5 * np.exp(w * (lo - hi))
        * -np.expm1(-2.0 * w * lo) * -np.expm1(-2.0 * w * (np.pi - hi))
        / (w * -np.expm1(-2.0 * w * np.pi))
    )


def _is_power_of_two(n: int) -> bool:
    return n > 0 and n & (n - 1) == 0


def _l1(values: np.ndarray, dx: float) -> float:
    return float(np.sum(np.abs(values)) * dx)


def check_boundary(bd: BoundaryData, tol: Optional[Tolerances] = None) -> BoundaryData:
    """
    Admissibility of Dirichlet data.

    Raises:
        ZeroModeError: a trace has a nonzero integral or first moment
    """
    tol = tol or Tolerances()
    for side, phi, mean, moment in (
        (Side.PLUS, bd.phi_plus, bd.mean_plus, bd.first_moment_plus),
        (Side.MINUS, bd.phi_minus, bd.mean_minus, bd.first_moment_minus),
    ):
        bound = tol.zero_mode * max(1.0, _l1(phi, bd.dx))
        if abs(mean) > bound or abs(moment) > bound:
            raise ZeroModeError(
                f"{side.value} trace has a nonzero zero mode",
                side=side.value, mean=mean, first_moment=moment, bound=bound,
            )
    if bd.edge_amplitude > tol.decay:
        logger.warning(
            "boundary data has not decayed at the truncation edge (amplitude %.3g); expect aliasing",
            bd.edge_amplitude,
        )
    return bd


def _multiplier_table(xi: np.ndarray, t: np.ndarray) -> np.ndarray:
    """v₊(ξ_m, t_j) for every nonzero ξ_m, row 0 left empty for the zero mode."""
    table = np.zeros((xi.size, t.size))
    cache: dict[float, np.ndarray] = {}
    for m in range(1, xi.size):
        key = abs(float(xi[m]))
        if key not in cache:
            cache[key] = multiplier_v(key, t)
        table[m] = cache[key]
    return table


def solve_dirichlet(
    bd: BoundaryData,
    nt: Optional[int] = None,
    tol: Optional[Tolerances] = None,
) -> StripField:
    """
    Solve L u = 0 on the strip with u(·, π) = φ₊ and u(·, 0) = φ₋.

    Args:
        bd: boundary traces on a periodic x-grid with a power-of-two size
        nt: number of t-nodes including both boundary rows
        tol: zero-mode and decay tolerances

    Returns:
        StripField with the solution sampled on the x- and t-grids

    Raises:
        DomainError: nx is not a power of two
        ZeroModeError: data with a nonzero integral or first moment
    """
    tol = tol or Tolerances()
    nt = nt or GridDefaults().nt
    if not _is_power_of_two(bd.nx):
        raise DomainError("the transform grid size must be a power of two", nx=bd.nx)
    check_boundary(bd, tol)

    t = t_grid(nt)
    xi = 2.0 * np.pi * fftfreq(bd.nx, d=bd.dx)
    v_plus = _multiplier_table(xi, t)
    v_minus = v_plus[:, ::-1]

    p_plus, p_minus = fft(bd.phi_plus), fft(bd.phi_minus)
    spectrum = p_plus[:, None] * v_plus + p_minus[:, None] * v_minus

    # ξ → 0 limit: second derivative of the transform times 2 sin t/(π ξ²)
    x = bd.x
    spectrum[0] = -np.sum(x * x * (bd.phi_plus + bd.phi_minus)) * np.sin(t) / np.pi

    u = np.real(ifft(spectrum, axis=0))
    logger.info("solved Dirichlet problem on a %dx%d grid (X=%g)", bd.nx, nt, bd.X)
    return StripField(bd.X, u)


def solve_dirichlet_fd(bd: BoundaryData, nt: Optional[int] = None) -> StripField:
    """
    Second-order finite-difference solve of (∂x² + ∂t² + 1) u = 0.

    u vanishes at x = ±X; the interior t-direction is diagonalized with a
    DST-I and each sine mode becomes a tridiagonal system in x.
    """
    nt = nt or GridDefaults().nt
    nx, dx = bd.nx, bd.dx
    dt = np.pi / (nt - 1)
    n_int = nt - 2

    rhs = np.zeros((nx - 1, n_int))
    rhs[:, 0] += bd.phi_minus[1:] / dt ** 2
    rhs[:, -1] += bd.phi_plus[1:] / dt ** 2
    modes = dst(rhs, type=1, axis=1, norm="ortho")

    lam = (4.0 / dt ** 2) * np.sin(np.arange(1, n_int + 1) * dt / 2.0) ** 2
    banded = np.zeros((3, nx - 1))
    banded[0, 1:] = 1.0 / dx ** 2
    banded[2, :-1] = 1.0 / dx ** 2

    solved = np.empty_like(modes)
    for n in range(n_int):
        banded[1] = -2.0 / dx ** 2 + 1.0 - lam[n]
        solved[:, n] = solve_banded((1, 1), banded, -modes[:, n])

    u = np.zeros((nx, nt))
    u[1:, 1:-1] = dst(solved, type=1, axis=1, norm="ortho")
    u[:, 0] = bd.phi_minus
    u[:, -1] = bd.phi_plus
    u[0, :] = 0.0
    return StripField(bd.X, u)


def check_source(src: SourceData, tol: Optional[Tolerances] = None) -> SourceData:
    """
    Admissibility of a reduced source f̃.

    The zero x-mode must vanish for every t, and the first x-moment must be
    orthogonal to sin t.

    Raises:
        ZeroModeError: either condition fails
    """
    tol = tol or Tolerances()
    t = src.t
    x = src.x
    f0 = np.sum(src.ftilde, axis=0) * src.dx
    f1 = np.sum(x[:, None] * src.ftilde, axis=0) * src.dx

    bound0 = tol.zero_mode * max(1.0, float(np.max(np.sum(np.abs(src.ftilde), axis=0) * src.dx)))
    if float(np.max(np.abs(f0))) > bound0:
        raise ZeroModeError(
            "source has a nonzero zero mode", max_zero_mode=float(np.max(np.abs(f0))), bound=bound0
        )

    projection = trapezoid(np.sin(t) * f1, t)
    bound1 = tol.zero_mode * max(1.0, float(trapezoid(np.sum(np.abs(x[:, None] * src.ftilde), axis=0) * src.dx, t)))
    if abs(projection) > bound1:
        raise ZeroModeError(
            "first moment of the source is not orthogonal to sin t",
            projection=float(projection), bound=bound1,
        )

    edge = max(float(np.max(np.abs(src.ftilde[0]))), float(np.max(np.abs(src.ftilde[-1]))))
    if edge > tol.decay:
        logger.warning("source has not decayed at the truncation edge (amplitude %.3g)", edge)
    return src


def _trapezoid_weights(t: np.ndarray) -> np.ndarray:
    w = np.full(t.size, t[1] - t[0])
    w[0] *= 0.5
    w[-1] *= 0.5
    return w


def solve_inhomogeneous(src: SourceData, tol: Optional[Tolerances] = None) -> StripField:
    """
    Solve L u = sin²t · f̃ with u = 0 at t = 0 and t = π.

    Each mode is û(ξ, t) = ∫ Ĝ(ξ, t, t') f̂(ξ, t') dt' by the trapezoidal rule.

    Raises:
        DomainError: nx is not a power of two
        ZeroModeError: inadmissible source
    """
    tol = tol or Tolerances()
    if not _is_power_of_two(src.nx):
        raise DomainError("the transform grid size must be a power of two", nx=src.nx)
    check_source(src, tol)

    t = src.t
    weights = _trapezoid_weights(t)
    xi = 2.0 * np.pi * fftfreq(src.nx, d=src.dx)
    spectrum = fft(src.ftilde, axis=0)
    out = np.zeros_like(spectrum)

    tt, ss = np.meshgrid(t, t, indexing="ij")
    cache: dict[float, np.ndarray] = {}
    for m in range(1, src.nx):
        key = abs(float(xi[m]))
        if key not in cache:
            cache[key] = green_hat(key, tt, ss) * weights[None, :]
        out[m] = cache[key] @ spectrum[m]

    x = src.x
    second_moment = np.sum(x[:, None] ** 2 * src.ftilde, axis=0)
    out[0] = -np.sin(t) / np.pi * trapezoid(np.sin(t) * second_moment, t)

    u = np.real(ifft(out, axis=0))
    u[:, 0] = 0.0
    u[:, -1] = 0.0
    logger.info("solved inhomogeneous problem on a %dx%d grid (X=%g)", src.nx, src.nt, src.X)
    return StripField(src.X, u)


@dataclass
class MomentReport:
    """Moment residuals of a solved Dirichlet field at increasing truncation radii."""
    residuals: list[MomentResidual] = field(default_factory=list)
    amplitude: float = 0.0

    @property
    def decaying(self) -> bool:
        values = [abs(r.value) for r in self.residuals]
        return all(b <= a + 1e-15 for a, b in zip(values, values[1:]))

    @property
    def converged(self) -> bool:
        return bool(self.residuals) and self.residuals[-1].converged

    def to_dict(self) -> dict:
        return {
            "amplitude": self.amplitude,
            "decaying": self.decaying,
            "converged": self.converged,
            "residuals": [r.to_dict() for r in self.residuals],
        }


def moment_check_pipeline(
    bd: BoundaryData,
    radii: Optional[Sequence[float]] = None,
    nt: Optional[int] = None,
    tol: Optional[Tolerances] = None,
) -> MomentReport:
    """Solve the Dirichlet problem and report the moment residual at each radius."""
    tol = tol or Tolerances()
    u = solve_dirichlet(bd, nt, tol)
    if radii is None:
        radii = [bd.X / 4.0, bd.X / 2.0, bd.X - 2.0]
    report = MomentReport(amplitude=float(np.max(np.abs(u.values))))
    for r in sorted(radii):
        report.residuals.append(moment_residual(u, r, tol))
    logger.info(
        "moment pipeline: |moment| at r=%g is %.3g", report.residuals[-1].r, abs(report.residuals[-1].value)
    )
    return report


def dirichlet_refinement_ratio(
    plus: Callable[[np.ndarray], np.ndarray],
    minus: Callable[[np.ndarray], np.ndarray],
    X: float,
    nx: int,
    nt: int,
    tol: Optional[Tolerances] = None,
) -> float:
    """
    Ratio of the finite-difference residuals of L₀u on two grids.

    The second grid halves both spacings; a second-order consistent
    solution gives a ratio near 4.
    """
    worst = []
    for mx, mt in ((nx, nt), (2 * nx, 2 * nt - 1)):
        bd = BoundaryData.from_functions(X, mx, plus, minus)
        u = solve_dirichlet(bd, mt, tol)
        worst.append(float(np.max(np.abs(jacobi_residual_grid(u, reduced=True)))))
    logger.debug("refinement residuals %.3g -> %.3g", *worst)
    return worst[0] / worst[1]


def hat(x: np.ndarray, width: float = 1.0) -> np.ndarray:
    """(1 - 2(x/a)²) e^{-(x/a)²}: even, zero integral, zero first moment."""
    y = x / width
    return (1.0 - 2.0 * y * y) * np.exp(-y * y)


def hat_derivative(x: np.ndarray) -> np.ndarray:
    """(4x³ - 6x) e^{-x²}: odd, zero integral, zero first moment."""
    return (4.0 * x ** 3 - 6.0 * x) * np.exp(-x * x)


def _zero(x: np.ndarray) -> np.ndarray:
    return np.zeros_like(x)


BOUNDARY_PRESETS: dict[str, tuple[Callable, Callable]] = {
    "zero": (_zero, _zero),
    "hat": (hat, _zero),
    "hat_pair": (hat, lambda x: 0.5 * hat(x, 2.0)),
    "odd": (hat_derivative, _zero),
    "gaussian_derivative": (lambda x: x * np.exp(-x * x), _zero),
}


def boundary_preset(name: str, X: float, nx: int) -> BoundaryData:
    if name not in BOUNDARY_PRESETS:
        raise DomainError(f"unknown boundary preset '{name}'", known=sorted(BOUNDARY_PRESETS))
    plus, minus = BOUNDARY_PRESETS[name]
    return BoundaryData.from_functions(X, nx, plus, minus)


def manufactured_solution(x: np.ndarray, t: np.ndarray) -> np.ndarray:
    """u* = x e^{-x²} sin 2t."""
    return x * np.exp(-x * x) * np.sin(2.0 * t)


def manufactured_source(x: np.ndarray, t: np.ndarray) -> np.ndarray:
    """f̃* = -(∂x² + ∂t² + 1) u* = (9x - 4x³) e^{-x²} sin 2t."""
    return (9.0 * x - 4.0 * x ** 3) * np.exp(-x * x) * np.sin(2.0 * t)


SOURCE_PRESETS: dict[str, Callable[[np.ndarray, np.ndarray], np.ndarray]] = {
    "zero": lambda x, t: np.zeros_like(x * t),
    "manufactured": manufactured_source,
    "hat_sine": lambda x, t: hat(x) * np.sin(3.0 * t),
}


def source_preset(name: str, X: float, nx: int, nt: int) -> SourceData:
    if name not in SOURCE_PRESETS:
        raise DomainError(f"unknown source preset '{name}'", known=sorted(SOURCE_PRESETS))
    return SourceData.from_function(X, nx, nt, SOURCE_PRESETS[name])


def _read_trace_csv(path: str) -> tuple[np.ndarray, np.ndarray]:
    data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    if data.shape[1] != 2:
        raise DomainError("boundary CSV needs the columns phi_plus,phi_minus", path=path, columns=data.shape[1])
    return data[:, 0], data[:, 1]


def boundary_from_spec(spec: dict, X: float, nx: int) -> BoundaryData:
    """Boundary section of a job spec: {"kind": "preset", "name": ...} or {"kind": "csv", "path": ...}."""
    kind = spec.get("kind", "preset")
    if kind == "preset":
        return boundary_preset(spec.get("name", "hat"), X, nx)
    if kind == "csv":
        plus, minus = _read_trace_csv(spec["path"])
        return BoundaryData(X, plus, minus)
    raise DomainError(f"unknown boundary kind '{kind}'", kind=kind)


def source_from_spec(spec: dict, X: float, nx: int, nt: int) -> SourceData:
    """Source section of a job spec; only presets are supported."""
    kind = spec.get("kind", "preset")
    if kind != "preset":
        raise DomainError(f"unknown source kind '{kind}'", kind=kind)
    source = source_preset(spec.get("name", "manufactured"), X, nx, nt)
    return float(spec.get("scale", 1.0)) * source


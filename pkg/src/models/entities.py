"""Core value objects for points, metrics and surface families."""

from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Optional

import numpy as np

from .errors import DomainError


class Model(Enum):
    DISK = "disk"
    HALF_PLANE = "halfplane"


class Gauge(Enum):
    PSI = "psi"    # t in (0, π)
    FHAT = "fhat"  # t in (-π/2, π/2)


class Family(Enum):
    CATENOID = "catenoid"
    PARABOLIC = "parabolic"
    TALL = "tall"
    Q = "q"
    UNDULOID = "unduloid"


class Side(Enum):
    PLUS = "plus"    # trace at t = π
    MINUS = "minus"  # trace at t = 0


@dataclass(frozen=True)
class Point2H:
    """A point of H² tagged with its model."""
    u: float
    v: float
    model: Model = Model.DISK

    def __post_init__(self):
        if not (np.isfinite(self.u) and np.isfinite(self.v)):
            raise DomainError("point coordinates must be finite", u=self.u, v=self.v)
        if self.model == Model.DISK and self.u * self.u + self.v * self.v >= 1.0:
            raise DomainError(
                "disk point must satisfy u² + v² < 1",
                u=self.u, v=self.v, radius=float(np.hypot(self.u, self.v)),
            )
        if self.model == Model.HALF_PLANE and self.v <= 0.0:
            raise DomainError("half-plane point must satisfy v > 0", u=self.u, v=self.v)

    @classmethod
    def from_complex(cls, z: complex, model: Model = Model.DISK) -> "Point2H":
        return cls(float(z.real), float(z.imag), model)

    def as_complex(self) -> complex:
        return complex(self.u, self.v)

    def to_dict(self) -> dict:
        return {"u": self.u, "v": self.v, "model": self.model.value}


@dataclass(frozen=True)
class Point3:
    """A point of H²×R in some chart, or of ambient R³."""
    x: float
    y: float
    t: float

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.t], dtype=float)

    def horizontal(self) -> complex:
        return complex(self.x, self.y)

    def to_dict(self) -> dict:
        return {"x": self.x, "y": self.y, "t": self.t}


@dataclass(frozen=True)
class MetricData:
    """Product metric and Christoffel symbols at a point.

    ``gamma[k, i, j]`` is Γᵏᵢⱼ.
    """
    g: np.ndarray
    gamma: np.ndarray
    model: Model

    @property
    def g_inv(self) -> np.ndarray:
        return np.diag(1.0 / np.diag(self.g))


@dataclass
class CatenoidProfile:
    """
    Sampled profile r(t) of the rotational catenoid with parameter k.

    ``samples`` has columns t, r, r'. ``evaluate`` uses the dense ODE
    solution on the first half period together with the evenness and
    periodicity of r.
    """
    k: float
    r0: float
    samples: np.ndarray
    height: float
    modulus_estimate: float
    period: float
    t_max: float
    r_max: float = 0.0
    first_integral_drift: float = 0.0
    minima: np.ndarray = field(default_factory=lambda: np.empty(0))
    solution: Optional[Callable[[np.ndarray], np.ndarray]] = field(
        default=None, repr=False, compare=False
    )

    def raw(self, t):
        """Dense ODE solution (r, r') at t in [0, t_max], no symmetry reduction."""
        if self.solution is None:
            raise DomainError("profile carries no dense solution", k=self.k)
        return self.solution(t)

    def evaluate(self, t: float) -> tuple[float, float, float]:
        """Return (r, r', r'') at any t the profile covers."""
        t = float(t)
        sign = -1.0 if t < 0 else 1.0
        s = abs(t)

        if self.t_max >= 0.5 * self.period:
            s = s % self.period
            if s > 0.5 * self.period:
                s = self.period - s
                sign = -sign
        elif s > self.t_max:
            raise DomainError(
                "profile not available at t", k=self.k, t=t, t_max=self.t_max
            )

        r, rp = self.raw(s)
        rp = sign * rp
        rpp = (4.0 * rp * rp - r ** 4 + 1.0) / (4.0 * r)
        return float(r), float(rp), float(rpp)

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "r0": self.r0,
            "height": self.height,
            "modulus_estimate": self.modulus_estimate,
            "period": self.period,
            "t_max": self.t_max,
            "r_max": self.r_max,
            "first_integral_drift": self.first_integral_drift,
            "sample_count": int(len(self.samples)),
        }


@dataclass(frozen=True)
class TallRectSpec:
    """Tall rectangle Σ_d with its two profile evaluators."""
    d: float
    d1: float
    height: float
    quadrature: Callable[[float], float] = field(repr=False, compare=False)
    elliptic: Callable[[float], float] = field(repr=False, compare=False)

    def profile(self, x: float, method: str = "quadrature") -> float:
        if method == "quadrature":
            return self.quadrature(x)
        if method == "elliptic":
            return self.elliptic(x)
        raise DomainError(f"unknown profile method '{method}'", method=method)

    def to_dict(self) -> dict:
        return {"d": self.d, "d1": self.d1, "height": self.height}


@dataclass(frozen=True)
class ParabolicParam:
    """Dilation parameter and gauge of a parabolic catenoid."""
    lam: float = 1.0
    gauge: Gauge = Gauge.PSI

    def __post_init__(self):
        if not self.lam > 0:
            raise DomainError("parabolic dilation must be positive", lam=self.lam)

    @property
    def t_range(self) -> tuple[float, float]:
        if self.gauge == Gauge.PSI:
            return 0.0, float(np.pi)
        return -0.5 * float(np.pi), 0.5 * float(np.pi)

    def to_dict(self) -> dict:
        return {"lambda": self.lam, "gauge": self.gauge.value}


@dataclass(frozen=True)
class ExtrinsicReport:
    """Induced metric, unit normal and curvature scalars at one sample."""
    E: float
    F: float
    G: float
    nu: np.ndarray
    A2: float
    H: float
    ric_nu: float

    def to_dict(self) -> dict:
        return {
            "E": self.E,
            "F": self.F,
            "G": self.G,
            "nu": [float(c) for c in self.nu],
            "A2": self.A2,
            "H": self.H,
            "ric_nu": self.ric_nu,
        }


@dataclass(frozen=True)
class MomentResidual:
    """Truncated moment of a strip field with its convergence diagnostics."""
    value: float
    value_half: float
    r: float
    edge_amplitude: float
    converged: bool

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "value_half": self.value_half,
            "r": self.r,
            "edge_amplitude": self.edge_amplitude,
            "converged": self.converged,
        }

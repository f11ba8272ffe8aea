"""Sampled fields on the truncated strip [-X, X] × [0, π]."""

import logging
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DomainError

logger = logging.getLogger(__name__)

MIN_POINTS = 3
RECOMMENDED_POINTS = 16


def x_grid(X: float, nx: int) -> np.ndarray:
    """Periodic grid x_j = -X + j·2X/nx, j = 0..nx-1."""
    return -X + np.arange(nx) * (2.0 * X / nx)


def t_grid(nt: int) -> np.ndarray:
    return np.linspace(0.0, np.pi, nt)


def _check_sizes(X: float, nx: int, nt: int = MIN_POINTS):
    if not X > 0:
        raise DomainError("truncation half-width must be positive", X=X)
    if nx < MIN_POINTS or nt < MIN_POINTS:
        raise DomainError(
            f"strip grids need at least {MIN_POINTS} points per direction", nx=nx, nt=nt
        )


@dataclass
class StripField:
    """
    Scalar field on [-X, X] × [0, π].

    ``values[i, j]`` is the value at (x_i, t_j). The boundary traces are the
    first (t = 0) and last (t = π) columns.
    """
    X: float
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        if self.values.ndim != 2:
            raise DomainError("strip values must be a 2-d array", shape=self.values.shape)
        _check_sizes(self.X, *self.values.shape)

    @classmethod
    def from_function(
        cls, X: float, nx: int, nt: int, func: Callable[[np.ndarray, np.ndarray], np.ndarray]
    ) -> "StripField":
        xx, tt = np.meshgrid(x_grid(X, nx), t_grid(nt), indexing="ij")
        return cls(X, func(xx, tt))

    @property
    def nx(self) -> int:
        return self.values.shape[0]

    @property
    def nt(self) -> int:
        return self.values.shape[1]

    @property
    def x(self) -> np.ndarray:
        return x_grid(self.X, self.nx)

    @property
    def t(self) -> np.ndarray:
        return t_grid(self.nt)

    @property
    def dx(self) -> float:
        return 2.0 * self.X / self.nx

    @property
    def dt(self) -> float:
        return np.pi / (self.nt - 1)

    @property
    def trace_minus(self) -> np.ndarray:
        return self.values[:, 0]

    @property
    def trace_plus(self) -> np.ndarray:
        return self.values[:, -1]

    @property
    def is_coarse(self) -> bool:
        return self.nx < RECOMMENDED_POINTS or self.nt < RECOMMENDED_POINTS

    def grid_index(self, x: float, t: float) -> tuple[int, int]:
        """Index of the grid node at (x, t); raises if (x, t) is not a node."""
        i = int(round((x + self.X) / self.dx))
        j = int(round(t / self.dt))
        if not (0 <= i < self.nx and 0 <= j < self.nt):
            raise DomainError("point outside the strip grid", x=x, t=t)
        if abs(self.x[i] - x) > 1e-9 * self.dx or abs(self.t[j] - t) > 1e-9 * self.dt:
            raise DomainError("point is not a grid node", x=x, t=t)
        return i, j

    def rows(self):
        """Yield (x, t, value) in row-major order."""
        for i, xv in enumerate(self.x):
            for j, tv in enumerate(self.t):
                yield float(xv), float(tv), float(self.values[i, j])


@dataclass
class BoundaryData:
    """Dirichlet traces φ₊ (at t = π) and φ₋ (at t = 0) sampled on the periodic x-grid."""
    X: float
    phi_plus: np.ndarray
    phi_minus: np.ndarray

    def __post_init__(self):
        self.phi_plus = np.asarray(self.phi_plus, dtype=float)
        self.phi_minus = np.asarray(self.phi_minus, dtype=float)
        if self.phi_plus.shape != self.phi_minus.shape or self.phi_plus.ndim != 1:
            raise DomainError(
                "boundary traces must be 1-d arrays of equal length",
                plus=self.phi_plus.shape, minus=self.phi_minus.shape,
            )
        _check_sizes(self.X, self.phi_plus.size)

    @classmethod
    def from_functions(
        cls,
        X: float,
        nx: int,
        plus: Callable[[np.ndarray], np.ndarray],
        minus: Callable[[np.ndarray], np.ndarray],
    ) -> "BoundaryData":
        x = x_grid(X, nx)
        return cls(X, plus(x), minus(x))

    @property
    def nx(self) -> int:
        return self.phi_plus.size

    @property
    def x(self) -> np.ndarray:
        return x_grid(self.X, self.nx)

    @property
    def dx(self) -> float:
        return 2.0 * self.X / self.nx

    @property
    def mean_plus(self) -> float:
        return float(np.sum(self.phi_plus) * self.dx)

    @property
    def mean_minus(self) -> float:
        return float(np.sum(self.phi_minus) * self.dx)

    @property
    def first_moment_plus(self) -> float:
        return float(np.sum(self.x * self.phi_plus) * self.dx)

    @property
    def first_moment_minus(self) -> float:
        return float(np.sum(self.x * self.phi_minus) * self.dx)

    @property
    def edge_amplitude(self) -> float:
        edge = max(1, self.nx // 64)
        return float(
            max(
                np.max(np.abs(self.phi_plus[:edge])), np.max(np.abs(self.phi_plus[-edge:])),
                np.max(np.abs(self.phi_minus[:edge])), np.max(np.abs(self.phi_minus[-edge:])),
            )
        )

    def scaled(self, factor: float) -> "BoundaryData":
        return BoundaryData(self.X, factor * self.phi_plus, factor * self.phi_minus)


@dataclass
class SourceData:
    """Reduced right-hand side f̃ = f / sin²t on the strip."""
    X: float
    ftilde: np.ndarray

    def __post_init__(self):
        self.ftilde = np.asarray(self.ftilde, dtype=float)
        if self.ftilde.ndim != 2:
            raise DomainError("source must be a 2-d array", shape=self.ftilde.shape)
        _check_sizes(self.X, *self.ftilde.shape)
        scale = max(1.0, float(np.max(np.abs(self.ftilde))))
        rows = max(float(np.max(np.abs(self.ftilde[:, 0]))), float(np.max(np.abs(self.ftilde[:, -1]))))
        if rows > 1e-12 * scale:
            raise DomainError("source must vanish on the rows t = 0 and t = π", boundary_max=rows)

    @classmethod
    def from_function(
        cls, X: float, nx: int, nt: int, func: Callable[[np.ndarray, np.ndarray], np.ndarray]
    ) -> "SourceData":
        xx, tt = np.meshgrid(x_grid(X, nx), t_grid(nt), indexing="ij")
        values = func(xx, tt)
        values[:, 0] = 0.0
        values[:, -1] = 0.0
        return cls(X, values)

    @property
    def nx(self) -> int:
        return self.ftilde.shape[0]

    @property
    def nt(self) -> int:
        return self.ftilde.shape[1]

    @property
    def x(self) -> np.ndarray:
        return x_grid(self.X, self.nx)

    @property
    def t(self) -> np.ndarray:
        return t_grid(self.nt)

    @property
    def dx(self) -> float:
        return 2.0 * self.X / self.nx

    def __add__(self, other: "SourceData") -> "SourceData":
        return SourceData(self.X, self.ftilde + other.ftilde)

    def __mul__(self, factor: float) -> "SourceData":
        return SourceData(self.X, factor * self.ftilde)

    __rmul__ = __mul__

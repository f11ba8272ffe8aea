"""Error hierarchy shared by all modules."""

from typing import Any

import numpy as np


def to_plain(value: Any) -> Any:
    """Convert numpy scalars and arrays so details survive json.dumps."""
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, complex):
        return {"re": value.real, "im": value.imag}
    if isinstance(value, (list, tuple)):
        return [to_plain(v) for v in value]
    if isinstance(value, dict):
        return {str(k): to_plain(v) for k, v in value.items()}
    return value


class H2RError(Exception):
    """Base class. Carries a machine-readable ``details`` dict."""

    def __init__(self, message: str, **details: Any):
        super().__init__(message)
        self.message = message
        self.details = details

    def to_dict(self) -> dict:
        return {
            "error": type(self).__name__,
            "message": self.message,
            "details": to_plain(self.details),
        }


class DomainError(H2RError, ValueError):
    """A precondition on an argument is violated."""


class ZeroModeError(DomainError):
    """Strip data with a nonzero mean or first moment (the ξ = 0 double pole)."""


class DegenerateImmersionError(H2RError, ArithmeticError):
    """First fundamental form or normal is degenerate at the sampled point."""


class ProfileDriftError(H2RError, RuntimeError):
    """The catenoid first integral drifted beyond tolerance after all refinements."""


class QuadratureError(H2RError, RuntimeError):
    """An adaptive quadrature did not reach the requested accuracy."""


class InvariantFailure(H2RError, AssertionError):
    """A verification suite reported failed checks."""

"""Adaptive and Gauss-Legendre quadrature wrappers."""

import logging
from typing import Callable

import numpy as np
from scipy.integrate import quad

from ..models.errors import QuadratureError

logger = logging.getLogger(__name__)


def integrate(
    func: Callable[[float], float],
    a: float,
    b: float,
    tol: float = 1e-12,
    limit: int = 200,
    label: str = "integral",
) -> float:
    """
    Adaptive Gauss-Kronrod integration of a smooth integrand on [a, b].

    Raises:
        QuadratureError: QUADPACK flagged the result and the error
            estimate exceeds the requested tolerance
    """
    if a == b:
        return 0.0

    out = quad(func, a, b, epsabs=tol, epsrel=tol, limit=limit, full_output=1)
    value, abserr = out[0], out[1]

    if len(out) > 3:
        # QUADPACK returns a message on ier > 0; accept it if the estimate is still tight
        if abserr > 100.0 * tol * max(1.0, abs(value)):
            raise QuadratureError(
                f"{label} did not converge: {out[3]}",
                a=a, b=b, value=value, abserr=abserr, tol=tol,
            )
        logger.debug("%s: QUADPACK warning accepted (abserr=%.3g)", label, abserr)

    return float(value)


def gauss_legendre_2d(
    func: Callable[[np.ndarray, np.ndarray], np.ndarray],
    x_range: tuple[float, float],
    t_range: tuple[float, float],
    n: int = 64,
) -> float:
    """Tensor Gauss-Legendre rule with n nodes per direction."""
    nodes, weights = np.polynomial.legendre.leggauss(n)
    (xa, xb), (ta, tb) = x_range, t_range
    xs = 0.5 * (xb - xa) * nodes + 0.5 * (xb + xa)
    ts = 0.5 * (tb - ta) * nodes + 0.5 * (tb + ta)
    xx, tt = np.meshgrid(xs, ts, indexing="ij")
    w = np.outer(weights, weights) * 0.25 * (xb - xa) * (tb - ta)
    return float(np.sum(w * func(xx, tt)))

"""
Models of H² and the product metric of H²×R.

The disk 𝔻 and the upper half-plane 𝔥 are related by the Möbius map
g(z) = i(1 - z)/(1 + z). Both metrics are conformal, e^{2φ}|dz|², so
the Christoffel symbols follow from the gradient of φ alone.
"""

import numpy as np

from ..models.entities import MetricData, Model, Point2H, Point3
from ..models.errors import DomainError


def mobius_g(z: complex) -> complex:
    """Raw map g(z) = i(1 - z)/(1 + z) on the Riemann sphere minus z = -1.

    No model check: boundary points map to the real axis.
    """
    z = complex(z)
    if z == -1:
        raise DomainError("g has a pole at z = -1", z=z)
    return 1j * (1 - z) / (1 + z)


def mobius_g_inverse(w: complex) -> complex:
    """Raw inverse z = (i - w)/(i + w), pole at w = -i."""
    w = complex(w)
    if w == -1j:
        raise DomainError("inverse of g has a pole at w = -i", w=w)
    return (1j - w) / (1j + w)


def disk_to_halfplane(z: Point2H) -> Point2H:
    if z.model != Model.DISK:
        raise DomainError("expected a disk point", model=z.model.value)
    return Point2H.from_complex(mobius_g(z.as_complex()), Model.HALF_PLANE)


def halfplane_to_disk(w: Point2H) -> Point2H:
    if w.model != Model.HALF_PLANE:
        raise DomainError("expected a half-plane point", model=w.model.value)
    return Point2H.from_complex(mobius_g_inverse(w.as_complex()), Model.DISK)


def horizontal_dilation(w: Point2H, s: float) -> Point2H:
    """T_s(w) = s·w, an isometry of the half-plane."""
    if not s > 0:
        raise DomainError("dilation factor must be positive", s=s)
    if w.model != Model.HALF_PLANE:
        raise DomainError("dilations act on half-plane points", model=w.model.value)
    return Point2H(s * w.u, s * w.v, Model.HALF_PLANE)


def hyperbolic_distance(p: Point2H, q: Point2H) -> float:
    if p.model != q.model:
        raise DomainError(
            "points live in different models; convert first",
            p=p.model.value, q=q.model.value,
        )
    diff2 = (p.u - q.u) ** 2 + (p.v - q.v) ** 2
    if p.model == Model.HALF_PLANE:
        arg = 1.0 + diff2 / (2.0 * p.v * q.v)
    else:
        arg = 1.0 + 2.0 * diff2 / ((1.0 - p.u ** 2 - p.v ** 2) * (1.0 - q.u ** 2 - q.v ** 2))
    return float(np.arccosh(arg))


def neck_radius(k: float) -> float:
    """r₀ = √(k+1) - √k, the minimal radius of the catenoid with parameter k."""
    if not k > 0:
        raise DomainError("catenoid parameter k must be positive", k=k)
    return float(np.sqrt(k + 1.0) - np.sqrt(k))


def mu0(k: float) -> float:
    """μ₀ = -i·g(r₀) = (1 + √k - √(1+k)) / (1 - √k + √(1+k))."""
    if not k > 0:
        raise DomainError("catenoid parameter k must be positive", k=k)
    sk, sk1 = np.sqrt(k), np.sqrt(1.0 + k)
    return float((1.0 + sk - sk1) / (1.0 - sk + sk1))


def mu1(d: float) -> float:
    """Modulus of μ₁ = i(√(1+d) - √(1-d))/(√(1+d) + √(1-d))."""
    if not 0 < d < 1:
        raise DomainError("tall rectangle parameter d must lie in (0, 1)", d=d)
    a, b = np.sqrt(1.0 + d), np.sqrt(1.0 - d)
    return float((a - b) / (a + b))


def _log_factor(p: Point3, model: Model) -> tuple[float, np.ndarray]:
    """Conformal factor e^{2φ} and ∇φ in the horizontal coordinates."""
    if model == Model.DISK:
        s = 1.0 - p.x * p.x - p.y * p.y
        if not s > 0:
            raise DomainError("disk point must satisfy x² + y² < 1", x=p.x, y=p.y)
        return 4.0 / (s * s), np.array([2.0 * p.x / s, 2.0 * p.y / s])
    if not p.y > 0:
        raise DomainError("half-plane point must satisfy y > 0", x=p.x, y=p.y)
    return 1.0 / (p.y * p.y), np.array([0.0, -1.0 / p.y])


def metric_at(p: Point3, model: Model) -> MetricData:
    """Product metric e^{2φ}(dx² + dy²) + dt² and its Christoffel symbols."""
    factor, dphi = _log_factor(p, model)
    g = np.diag([factor, factor, 1.0])

    gamma = np.zeros((3, 3, 3))
    for k in range(2):
        for i in range(2):
            for j in range(2):
                gamma[k, i, j] = (
                    (k == i) * dphi[j] + (k == j) * dphi[i] - (i == j) * dphi[k]
                )
    return MetricData(g=g, gamma=gamma, model=model)


def metric_derivative(p: Point3, model: Model) -> np.ndarray:
    """``dg[l, i, j]`` = ∂_l g_ij in closed form."""
    factor, dphi = _log_factor(p, model)
    dg = np.zeros((3, 3, 3))
    for l in range(2):
        dg[l, 0, 0] = dg[l, 1, 1] = 2.0 * dphi[l] * factor
    return dg


def compatibility_residual(p: Point3, model: Model) -> float:
    """max |∇_l g_ij| assembled from the closed-form symbols."""
    metric = metric_at(p, model)
    dg = metric_derivative(p, model)
    g, gamma = metric.g, metric.gamma
    # ∇_l g_ij = ∂_l g_ij - Γᵐ_li g_mj - Γᵐ_lj g_im
    nabla = (
        dg
        - np.einsum("mli,mj->lij", gamma, g)
        - np.einsum("mlj,im->lij", gamma, g)
    )
    return float(np.max(np.abs(nabla)))

from .catenoid import (
    conformal_modulus,
    height,
    immerse_catenoid,
    integrate_profile,
    phi_k_derivative,
    t_of_r,
)
from .curvature import ImmersionPatch, fundamental_forms, max_mean_curvature, unit_normal
from .hyperbolic import metric_at, mobius_g, mobius_g_inverse, mu0, mu1, neck_radius
from .parabolic import fhat, parabolic_patch, psi, q_residual, q_sheets
from .tall import height_tall, lambda_elliptic, lambda_quadrature, regeneration_error, tall_spec, upsilon

__all__ = [
    "conformal_modulus",
    "height",
    "immerse_catenoid",
    "integrate_profile",
    "phi_k_derivative",
    "t_of_r",
    "ImmersionPatch",
    "fundamental_forms",
    "max_mean_curvature",
    "unit_normal",
    "metric_at",
    "mobius_g",
    "mobius_g_inverse",
    "mu0",
    "mu1",
    "neck_radius",
    "fhat",
    "parabolic_patch",
    "psi",
    "q_residual",
    "q_sheets",
    "height_tall",
    "lambda_elliptic",
    "lambda_quadrature",
    "regeneration_error",
    "tall_spec",
    "upsilon",
]

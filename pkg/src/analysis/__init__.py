from .bvp import (
    MomentReport,
    boundary_preset,
    green_hat,
    moment_check_pipeline,
    multiplier_v,
    solve_dirichlet,
    solve_dirichlet_fd,
    solve_inhomogeneous,
    source_preset,
)
from .jacobi import (
    AnalyticField,
    FieldName,
    SeriesKind,
    jacobi_apply,
    jacobi_field_from_normal,
    moment_residual,
    rayleigh_quotient,
    second_order_integral,
    series_a,
    series_h,
    truncated_l2_norm,
)

__all__ = [
    "MomentReport",
    "boundary_preset",
    "green_hat",
    "moment_check_pipeline",
    "multiplier_v",
    "solve_dirichlet",
    "solve_dirichlet_fd",
    "solve_inhomogeneous",
    "source_preset",
    "AnalyticField",
    "FieldName",
    "SeriesKind",
    "jacobi_apply",
    "jacobi_field_from_normal",
    "moment_residual",
    "rayleigh_quotient",
    "second_order_integral",
    "series_a",
    "series_h",
    "truncated_l2_norm",
]

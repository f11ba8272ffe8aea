from .entities import (
    CatenoidProfile,
    ExtrinsicReport,
    Family,
    Gauge,
    MetricData,
    Model,
    MomentResidual,
    ParabolicParam,
    Point2H,
    Point3,
    Side,
    TallRectSpec,
)
from .errors import (
    DegenerateImmersionError,
    DomainError,
    H2RError,
    InvariantFailure,
    ProfileDriftError,
    QuadratureError,
    ZeroModeError,
)
from .fields import BoundaryData, SourceData, StripField, t_grid, x_grid
from .jobs import Command, JobConfig, OutputFormat, Suite, TallPiece

__all__ = [
    "CatenoidProfile",
    "ExtrinsicReport",
    "Family",
    "Gauge",
    "MetricData",
    "Model",
    "MomentResidual",
    "ParabolicParam",
    "Point2H",
    "Point3",
    "Side",
    "TallRectSpec",
    "DegenerateImmersionError",
    "DomainError",
    "H2RError",
    "InvariantFailure",
    "ProfileDriftError",
    "QuadratureError",
    "ZeroModeError",
    "BoundaryData",
    "SourceData",
    "StripField",
    "t_grid",
    "x_grid",
    "Command",
    "JobConfig",
    "OutputFormat",
    "Suite",
    "TallPiece",
]

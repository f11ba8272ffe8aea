"""Validated job configuration for the command-line runner."""

import json
from enum import Enum
from pathlib import Path
from typing import Any, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .entities import Family


class Command(str, Enum):
    PROFILE = "profile"
    HEIGHT = "height"
    MESH = "mesh"
    VERIFY = "verify"
    JACOBI = "jacobi"
    SOLVE = "solve"


class OutputFormat(str, Enum):
    CSV = "csv"
    OBJ = "obj"
    JSON = "json"


class Suite(str, Enum):
    ALL = "all"
    GEOMETRY = "geometry"
    JACOBI = "jacobi"
    BVP = "bvp"


class TallPiece(str, Enum):
    SIGMA = "sigma"          # Σ_d inside the unit cylinder
    ANNULUS = "annulus"      # extension over (d₁, 1/d₁) × (-1, 1)
    PERIODIC = "periodic"    # periodic ambient surface clipped to the cylinder


DEFAULT_FORMATS = {
    Command.PROFILE: OutputFormat.CSV,
    Command.HEIGHT: OutputFormat.JSON,
    Command.MESH: OutputFormat.OBJ,
    Command.VERIFY: OutputFormat.JSON,
    Command.JACOBI: OutputFormat.CSV,
    Command.SOLVE: OutputFormat.CSV,
}

FAMILY_COMMANDS = {Command.PROFILE, Command.HEIGHT, Command.MESH}


class JobConfig(BaseModel):
    """One CLI invocation or JSON job spec."""
    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    command: Command
    family: Optional[Family] = None
    k: Optional[float] = Field(default=None, gt=0)
    d: Optional[float] = Field(default=None, gt=0, lt=1)
    lam: float = Field(default=1.0, gt=0, alias="lambda")
    grid: Optional[tuple[int, int]] = None
    box: float = Field(default=2.0, gt=0)
    X: float = Field(default=20.0, gt=0)
    output: Optional[Path] = None
    format: Optional[OutputFormat] = None
    seed: int = 0
    suite: Suite = Suite.ALL
    piece: TallPiece = TallPiece.PERIODIC
    boundary: Optional[dict[str, Any]] = None
    source: Optional[dict[str, Any]] = None

    @field_validator("grid")
    @classmethod
    def _grid_sizes(cls, value):
        if value is not None and min(value) < 16:
            raise ValueError(f"grid sizes must be >= 16, got {value}")
        return value

    @model_validator(mode="after")
    def _command_requirements(self):
        if self.command in FAMILY_COMMANDS and self.family is None:
            raise ValueError(f"command '{self.command.value}' needs --family")
        if self.family == Family.CATENOID and self.command == Command.PROFILE and self.k is None:
            raise ValueError("catenoid profiles need --k")
        if self.family == Family.TALL and self.command == Command.PROFILE and self.d is None:
            raise ValueError("tall rectangle profiles need --d")
        if self.command == Command.SOLVE and self.boundary is None and self.source is None:
            raise ValueError("solve jobs need a boundary or a source section")
        return self

    @property
    def output_format(self) -> OutputFormat:
        return self.format or DEFAULT_FORMATS[self.command]

    @classmethod
    def from_job_file(cls, path: Path, **overrides: Any) -> "JobConfig":
        """Load a JSON job spec ({X, nx, nt, boundary, source}) for ``solve``."""
        with open(path) as f:
            data = json.load(f)
        nx = data.pop("nx", None)
        nt = data.pop("nt", None)
        if nx is not None and nt is not None:
            data["grid"] = (nx, nt)
        data.setdefault("command", Command.SOLVE.value)
        data.update({k: v for k, v in overrides.items() if v is not None})
        return cls.model_validate(data)

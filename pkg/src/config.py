"""Default tolerances and grid sizes, with environment overrides."""

import logging
import os
from dataclasses import asdict, dataclass, fields, replace
from typing import Mapping, Optional

logger = logging.getLogger(__name__)

ENV_VAR = "H2R_TOL"


@dataclass(frozen=True)
class Tolerances:
    """
    Acceptance thresholds shared by the library, the verification suites and the CLI.

    Every field can be overridden through ``H2R_TOL``, e.g.
    ``H2R_TOL="minimality=1e-7,moment=1e-4"``.
    """
    minimality: float = 1e-6       # max |H| on sampled surfaces
    second_form: float = 1e-8      # |A|² and Ric(ν,ν) identities
    first_integral: float = 1e-9   # catenoid profile drift
    quadrature: float = 1e-10      # absolute accuracy of the geometric quadratures
    elliptic: float = 1e-8         # closed form vs quadrature for λ_d
    jacobi: float = 1e-12          # analytic L-residuals
    zero_mode: float = 1e-8        # BVP mean / first-moment rejection
    decay: float = 1e-8            # data amplitude allowed at the truncation edge
    moment: float = 1e-5           # moment condition reporting tolerance
    boundary_margin: float = 1e-8  # distance kept from the ideal boundary

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class GridDefaults:
    """Truncation and grid defaults of the strip solvers."""
    X: float = 20.0
    nx: int = 1024
    nt: int = 256

    def to_dict(self) -> dict:
        return asdict(self)


def parse_overrides(text: str) -> dict[str, float]:
    """
    Parse a ``name=value,name=value`` override string.

    Raises:
        ValueError: unknown tolerance name or unparsable value
    """
    known = {f.name for f in fields(Tolerances)}
    overrides: dict[str, float] = {}

    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        name, sep, raw = item.partition("=")
        name = name.strip()
        if not sep:
            raise ValueError(f"tolerance override '{item}' is not of the form name=value")
        if name not in known:
            raise ValueError(f"unknown tolerance '{name}' (known: {', '.join(sorted(known))})")
        try:
            value = float(raw)
        except ValueError as exc:
            raise ValueError(f"tolerance '{name}' has unparsable value '{raw}'") from exc
        if not value > 0:
            raise ValueError(f"tolerance '{name}' must be positive, got {value}")
        overrides[name] = value

    return overrides


def load_tolerances(environ: Optional[Mapping[str, str]] = None) -> Tolerances:
    """Build the active tolerances from defaults and ``H2R_TOL``."""
    env = os.environ if environ is None else environ
    text = env.get(ENV_VAR, "")
    if not text:
        return Tolerances()

    overrides = parse_overrides(text)
    logger.info("tolerance overrides from %s: %s", ENV_VAR, overrides)
    return replace(Tolerances(), **overrides)

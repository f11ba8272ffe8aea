"""
Command-line runner.

    h2r profile --family catenoid --k 1 --out profile.csv
    h2r height --family tall --d 0.01
    h2r mesh --family q --box 2 --out q.obj
    h2r mesh --family tall --d 0.5 --piece annulus --out annulus.obj
    h2r verify --suite all --seed 7 --out report.json
    h2r jacobi --grid 64 33 --box 3
    h2r solve --job job.json --out u.csv

Exit status is 0 on success, 1 when a verification run fails and 2 on
invalid input; errors are written to stderr as JSON.
"""

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional

import numpy as np
from pydantic import ValidationError

from .analysis import bvp, jacobi
from .analysis.jacobi import AnalyticField, FieldName
from .config import GridDefaults, Tolerances, load_tolerances
from .export import meshes
from .export.store import ArtifactStore, render_csv, render_json, render_obj
from .geometry import catenoid, tall
from .geometry.hyperbolic import mu1
from .models.entities import Family, Gauge
from .models.errors import DomainError, H2RError, InvariantFailure
from .models.fields import StripField
from .models.jobs import Command, JobConfig, OutputFormat, Suite, TallPiece
from .verification import VerificationEngine, build_checks

logger = logging.getLogger("h2r")

CATENOID_GRID = (1e-3, 1e-2, 0.1, 1.0, 10.0, 100.0)
TALL_GRID = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9)


@dataclass
class Artifact:
    """Rendered output of one command, written to a file or stdout."""
    kind: OutputFormat
    header: Optional[list[str]] = None
    rows: Optional[list] = None
    payload: Optional[dict] = None
    mesh: Optional[meshes.Mesh] = None

    def render(self) -> str:
        if self.kind == OutputFormat.CSV:
            return render_csv(self.header, self.rows)
        if self.kind == OutputFormat.OBJ:
            return render_obj(self.mesh)
        return render_json(self.payload)

    def write(self, output: Optional[Path]) -> Optional[Path]:
        if output is None:
            sys.stdout.write(self.render())
            return None
        store = ArtifactStore(output.parent)
        if self.kind == OutputFormat.CSV:
            return store.write_csv(output.name, self.header, self.rows)
        if self.kind == OutputFormat.OBJ:
            return store.write_obj(output.name, self.mesh)
        return store.write_json(output.name, self.payload)


def _table(config: JobConfig, header: list[str], rows: list[list]) -> Artifact:
    """CSV rows or, for json, the same rows keyed by column."""
    if config.output_format == OutputFormat.CSV:
        return Artifact(OutputFormat.CSV, header=header, rows=rows)
    if config.output_format == OutputFormat.JSON:
        return Artifact(OutputFormat.JSON, payload={"columns": header, "rows": rows})
    raise DomainError(f"{config.command.value} cannot write {config.output_format.value}")


def run_profile(config: JobConfig, tol: Tolerances) -> Artifact:
    n = config.grid[0] if config.grid else None
    if config.family == Family.CATENOID:
        profile = catenoid.integrate_profile(config.k, n_samples=n or 2001, tol=tol)
        t, r, rp = profile.samples.T
        residual = catenoid.first_integral(r, rp) - config.k
        rows = np.column_stack([t, r, rp, residual]).tolist()
        return _table(config, ["t", "r", "rprime", "first_integral_residual"], rows)
    if config.family == Family.TALL:
        a = tall.d1(config.d)
        xs = a + (1.0 - a) * np.linspace(0.0, 1.0, n or 201)
        rows = [[x, tall.lambda_quadrature(config.d, x, tol), tall.lambda_elliptic(config.d, x)] for x in xs]
        return _table(config, ["x", "lambda_quadrature", "lambda_elliptic"], rows)
    raise DomainError(f"no profile for family '{config.family.value}'", family=config.family.value)


def _strictly(values: list[float], increasing: bool) -> bool:
    steps = np.diff(values)
    return bool(np.all(steps > 0) if increasing else np.all(steps < 0))


def run_height(config: JobConfig, tol: Tolerances) -> Artifact:
    if config.family == Family.CATENOID:
        ks = [config.k] if config.k is not None else list(CATENOID_GRID)
        rows = [[k, catenoid.height(k, tol), catenoid.conformal_modulus(k, tol)] for k in ks]
        header = ["k", "height", "modulus"]
        flags = {
            "decreasing": _strictly([r[1] for r in rows], increasing=False),
            "below_pi": all(r[1] < np.pi for r in rows),
        }
    elif config.family == Family.TALL:
        ds = [config.d] if config.d is not None else list(TALL_GRID)
        rows = [[d, tall.height_tall(d, tol), mu1(d)] for d in ds]
        header = ["d", "height", "modulus"]
        flags = {
            "increasing": _strictly([r[1] for r in rows], increasing=True),
            "above_pi": all(r[1] > np.pi for r in rows),
        }
    else:
        raise DomainError(f"no height for family '{config.family.value}'", family=config.family.value)

    if config.output_format == OutputFormat.JSON:
        return Artifact(OutputFormat.JSON, payload={
            "family": config.family.value,
            "rows": [dict(zip(header, r)) for r in rows],
            **flags,
        })
    return _table(config, header, rows)


def run_mesh(config: JobConfig, tol: Tolerances) -> Artifact:
    if config.output_format != OutputFormat.OBJ:
        raise DomainError("meshes are written as obj", format=config.output_format.value)
    nu, nv = config.grid or (48, 48)
    family = config.family
    if family == Family.CATENOID:
        mesh = meshes.catenoid_mesh(config.k or 1.0, nu, nv, tol)
    elif family == Family.UNDULOID:
        mesh = meshes.unduloid_mesh(config.k or 1.0, nu, nv)
    elif family == Family.PARABOLIC:
        mesh = meshes.parabolic_mesh(config.lam, config.box, nu)
    elif family == Family.Q:
        mesh = meshes.q_mesh(config.box, nu)
    elif config.piece == TallPiece.PERIODIC:
        mesh = meshes.tall_periodic_mesh(config.d or 0.5, n_x=nu, n_y=nv, tol=tol)
    else:
        annulus = config.piece == TallPiece.ANNULUS
        mesh = meshes.tall_mesh(config.d or 0.5, n_x=nu, n_y=nv, annulus=annulus, tol=tol)
    logger.info("%s mesh: %d vertices, %d faces", family.value, len(mesh.vertices), len(mesh.faces))
    return Artifact(OutputFormat.OBJ, mesh=mesh)


def run_verify(config: JobConfig, tol: Tolerances) -> tuple[Artifact, bool]:
    engine = VerificationEngine(seed=config.seed, tol=tol)
    engine.register_all(build_checks(tol))
    report = engine.run_sync(config.suite)
    return Artifact(OutputFormat.JSON, payload=report.to_dict()), report.passed


def run_jacobi(config: JobConfig, tol: Tolerances) -> Artifact:
    nx, nt = config.grid or (64, 33)
    xs = np.linspace(-config.box, config.box, nx)
    ts = np.linspace(0.0, np.pi, nt)[1:-1]
    fields = [AnalyticField(name, Gauge.PSI) for name in FieldName]

    rows = []
    for x in xs:
        for t in ts:
            values = [float(f.value(x, t)) for f in fields]
            residuals = [jacobi.jacobi_apply(f, x, t) for f in fields]
            rows.append([x, t, *values, *residuals])

    if config.output_format == OutputFormat.JSON:
        maxima = {
            f.name.value: max(abs(r[2 + len(fields) + i]) for r in rows)
            for i, f in enumerate(fields)
        }
        return Artifact(OutputFormat.JSON, payload={"gauge": Gauge.PSI.value, "max_residual": maxima})
    header = ["x", "t"] + [f.name.value for f in fields] + [f"L_{f.name.value}" for f in fields]
    return _table(config, header, rows)


def _solve(config: JobConfig, tol: Tolerances) -> tuple[StripField, dict]:
    defaults = GridDefaults()
    nx, nt = config.grid or (defaults.nx, defaults.nt)
    X = config.X
    bd = None
    if config.boundary is not None:
        # csv traces fix the x-grid size
        bd = bvp.boundary_from_spec(config.boundary, X, nx)
        nx = bd.nx
    u = np.zeros((nx, nt))
    report: dict = {"X": X, "nx": nx, "nt": nt}

    if bd is not None:
        dirichlet = bvp.solve_dirichlet(bd, nt, tol)
        u += dirichlet.values
        moments = bvp.moment_check_pipeline(bd, nt=nt, tol=tol)
        report["moment"] = moments.to_dict()
        trace = max(
            float(np.max(np.abs(dirichlet.trace_plus - bd.phi_plus))),
            float(np.max(np.abs(dirichlet.trace_minus - bd.phi_minus))),
        )
        report["trace_error"] = trace
    if config.source is not None:
        src = bvp.source_from_spec(config.source, X, nx, nt)
        u += bvp.solve_inhomogeneous(src, tol).values

    field = StripField(X, u)
    report["max_abs"] = float(np.max(np.abs(u)))
    report["edge_amplitude"] = float(max(np.max(np.abs(u[0])), np.max(np.abs(u[-1]))))
    return field, report


def run_solve(config: JobConfig, tol: Tolerances) -> Artifact:
    field, report = _solve(config, tol)
    if config.output_format == OutputFormat.JSON:
        return Artifact(OutputFormat.JSON, payload=report)
    return _table(config, ["x", "t", "u"], [list(row) for row in field.rows()])


def run(config: JobConfig, tol: Optional[Tolerances] = None) -> int:
    """
    Execute one job and write its artifact.

    The verification report is written before a failed run raises.

    Raises:
        InvariantFailure: a verification run did not pass
        H2RError: invalid parameters or a failed numerical precondition
    """
    tol = tol or load_tolerances()
    logger.debug("job %s", config.model_dump_json(by_alias=True))

    passed = True
    if config.command == Command.PROFILE:
        artifact = run_profile(config, tol)
    elif config.command == Command.HEIGHT:
        artifact = run_height(config, tol)
    elif config.command == Command.MESH:
        artifact = run_mesh(config, tol)
    elif config.command == Command.VERIFY:
        artifact, passed = run_verify(config, tol)
    elif config.command == Command.JACOBI:
        artifact = run_jacobi(config, tol)
    else:
        artifact = run_solve(config, tol)

    artifact.write(config.output)
    if not passed:
        failed = [r["name"] for r in artifact.payload["results"] if r["outcome"] != "passed"]
        raise InvariantFailure("verification failed", failed=failed)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="h2r", description="Minimal surfaces of H²×R: profiles, meshes, Jacobi fields and strip solvers")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    parser.add_argument("-q", "--quiet", action="store_true", help="warnings and errors only")
    sub = parser.add_subparsers(dest="command", required=True)

    for command in Command:
        p = sub.add_parser(command.value)
        p.add_argument("--family", choices=[f.value for f in Family])
        p.add_argument("--k", type=float)
        p.add_argument("--d", type=float)
        p.add_argument("--lambda", dest="lam", type=float)
        p.add_argument("--grid", nargs=2, type=int, metavar=("NX", "NT"))
        p.add_argument("--box", type=float)
        p.add_argument("--X", dest="X", type=float)
        p.add_argument("--out", type=Path)
        p.add_argument("--format", choices=[f.value for f in OutputFormat])
        p.add_argument("--seed", type=int)
        p.add_argument("--suite", choices=[s.value for s in Suite])
        if command == Command.MESH:
            p.add_argument("--piece", choices=[c.value for c in TallPiece], help="tall rectangle piece to mesh")
        if command == Command.SOLVE:
            p.add_argument("--job", type=Path, help="JSON job spec {X, nx, nt, boundary, source}")
            p.add_argument("--boundary", help="boundary preset name")
            p.add_argument("--source", help="source preset name")
    return parser


def build_config(args: argparse.Namespace) -> JobConfig:
    values = {
        "command": args.command,
        "family": args.family,
        "k": args.k,
        "d": args.d,
        "lambda": args.lam,
        "grid": tuple(args.grid) if args.grid else None,
        "box": args.box,
        "X": args.X,
        "output": args.out,
        "format": args.format,
        "seed": args.seed,
        "suite": args.suite,
        "piece": getattr(args, "piece", None),
    }
    if args.command == Command.SOLVE.value:
        if getattr(args, "boundary", None):
            values["boundary"] = {"kind": "preset", "name": args.boundary}
        if getattr(args, "source", None):
            values["source"] = {"kind": "preset", "name": args.source}
        if getattr(args, "job", None):
            return JobConfig.from_job_file(args.job, **values)
    return JobConfig.model_validate({k: v for k, v in values.items() if v is not None})


def _configure_logging(args: argparse.Namespace):
    level = logging.DEBUG if args.verbose else logging.WARNING if args.quiet else logging.INFO
    logging.basicConfig(level=level, format="%(asctime)s %(levelname)s %(name)s: %(message)s", stream=sys.stderr)


def _validation_errors(exc: ValidationError) -> list[dict]:
    return [{"loc": [str(p) for p in e["loc"]], "msg": e["msg"], "type": e["type"]} for e in exc.errors()]


def _fail(payload: dict, status: int) -> int:
    sys.stderr.write(json.dumps(payload) + "\n")
    return status


def main(argv: Optional[Iterable[str]] = None) -> int:
    args = build_parser().parse_args(list(argv) if argv is not None else None)
    _configure_logging(args)
    try:
        config = build_config(args)
        return run(config, load_tolerances())
    except ValidationError as exc:
        return _fail({"error": "ValidationError", "message": str(exc), "details": {"errors": _validation_errors(exc)}}, 2)
    except InvariantFailure as exc:
        return _fail(exc.to_dict(), 1)
    except H2RError as exc:
        return _fail(exc.to_dict(), 2)
    except ValueError as exc:
        return _fail({"error": type(exc).__name__, "message": str(exc), "details": {}}, 2)


if __name__ == "__main__":
    sys.exit(main())

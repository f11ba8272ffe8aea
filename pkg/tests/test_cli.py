import csv
import json

import numpy as np
import pytest

from src.cli import build_config, build_parser, main
from src.config import Tolerances
from src.geometry import catenoid, tall
from src.models.jobs import Command, OutputFormat, TallPiece


def _read_csv(path):
    with open(path) as f:
        return list(csv.reader(f))


def test_build_config_maps_flags():
    args = build_parser().parse_args(["mesh", "--family", "parabolic", "--lambda", "2", "--grid", "32", "32"])
    config = build_config(args)
    assert config.command == Command.MESH
    assert config.lam == 2.0
    assert config.grid == (32, 32)
    assert config.output_format == OutputFormat.OBJ


def test_height_table(tmp_path):
    out = tmp_path / "h.json"
    assert main(["height", "--family", "catenoid", "--k", "1", "--out", str(out)]) == 0
    payload = json.loads(out.read_text())
    assert payload["rows"][0]["height"] == pytest.approx(catenoid.height(1.0, Tolerances()))
    assert payload["below_pi"] is True


def test_tall_heights_exceed_pi(tmp_path):
    out = tmp_path / "tall.json"
    assert main(["height", "--family", "tall", "--out", str(out)]) == 0
    payload = json.loads(out.read_text())
    assert payload["above_pi"] is True
    assert payload["increasing"] is True
    assert len(payload["rows"]) == 9


def test_profile_csv(tmp_path):
    out = tmp_path / "profile.csv"
    assert main(["profile", "--family", "catenoid", "--k", "0.5", "--grid", "32", "16", "--out", str(out)]) == 0
    rows = _read_csv(out)
    assert rows[0] == ["t", "r", "rprime", "first_integral_residual"]
    assert len(rows) == 33
    assert float(rows[1][1]) == pytest.approx(np.sqrt(1.5) - np.sqrt(0.5))
    assert max(abs(float(row[3])) for row in rows[1:]) < 1e-9


def test_tall_profile_to_stdout(capsys):
    assert main(["profile", "--family", "tall", "--d", "0.5", "--grid", "16", "16"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "x,lambda_quadrature,lambda_elliptic"
    quad, ell = map(float, lines[-1].split(",")[1:])
    assert quad == pytest.approx(ell, abs=1e-7)


def test_mesh_obj(tmp_path):
    out = tmp_path / "q.obj"
    assert main(["mesh", "--family", "q", "--grid", "17", "17", "--out", str(out)]) == 0
    text = out.read_text()
    assert "\nv " in text
    assert "\nf " in text


def _obj_vertices(path):
    return np.array([list(map(float, line.split()[1:])) for line in path.read_text().splitlines() if line.startswith("v ")])


@pytest.mark.parametrize("piece", ["sigma", "annulus", "periodic"])
def test_tall_mesh_pieces(piece, tmp_path):
    out = tmp_path / f"{piece}.obj"
    argv = ["mesh", "--family", "tall", "--d", "0.5", "--grid", "16", "17", "--out", str(out)]
    assert main(argv + ["--piece", piece]) == 0
    vertices = _obj_vertices(out)
    radii = np.hypot(vertices[:, 0], vertices[:, 1])
    h = tall.height_tall(0.5, Tolerances())
    if piece == "sigma":
        assert radii.max() <= 1.0 + 1e-9
        assert np.abs(vertices[:, 2]).max() == pytest.approx(0.5 * h)
    elif piece == "annulus":
        assert radii.max() == pytest.approx(1.0 / tall.d1(0.5))
        assert np.abs(vertices[:, 2]).max() == pytest.approx(h)
    else:
        assert radii.max() < 1.0
        assert vertices[:, 2].max() > 1.5 * h


def test_mesh_piece_defaults_to_periodic():
    args = build_parser().parse_args(["mesh", "--family", "tall"])
    assert build_config(args).piece == TallPiece.PERIODIC
    with pytest.raises(SystemExit):
        build_parser().parse_args(["mesh", "--family", "tall", "--piece", "disk"])


def test_jacobi_residuals(capsys):
    assert main(["jacobi", "--grid", "16", "16", "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert set(payload["max_residual"]) == {"psi", "utilde", "w_cat", "w_tall"}
    assert max(payload["max_residual"].values()) < 1e-12


def test_solve_preset(tmp_path):
    out = tmp_path / "u.csv"
    assert main(["solve", "--boundary", "hat", "--X", "10", "--grid", "64", "33", "--out", str(out)]) == 0
    rows = _read_csv(out)
    assert rows[0] == ["x", "t", "u"]
    assert len(rows) == 1 + 64 * 33


def test_solve_job_file(tmp_path):
    job = tmp_path / "job.json"
    job.write_text(json.dumps({
        "X": 20.0, "nx": 256, "nt": 65,
        "boundary": {"kind": "preset", "name": "hat_pair"},
        "source": {"kind": "preset", "name": "hat_sine", "scale": 0.5},
    }))
    out = tmp_path / "report.json"
    assert main(["solve", "--job", str(job), "--format", "json", "--out", str(out)]) == 0
    report = json.loads(out.read_text())
    assert report["nx"] == 256
    assert report["trace_error"] < 1e-10
    assert len(report["moment"]["residuals"]) == 3


@pytest.mark.parametrize("argv", [
    ["profile", "--family", "q"],
    ["profile", "--family", "catenoid", "--k", "1", "--grid", "4", "4"],
    ["solve", "--boundary", "gaussian_derivative", "--grid", "64", "17"],
    ["solve", "--boundary", "hat", "--grid", "100", "17"],
    ["mesh", "--family", "q", "--format", "csv"],
])
def test_invalid_input_exits_with_2(argv, capsys):
    assert main(argv) == 2
    error = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
    assert {"error", "message", "details"} <= set(error)


def test_bad_tolerance_override(monkeypatch, capsys):
    monkeypatch.setenv("H2R_TOL", "nonsense=1")
    assert main(["height", "--family", "catenoid", "--k", "1"]) == 2
    assert "unknown tolerance" in capsys.readouterr().err


@pytest.mark.slow
def test_failed_verification_exits_with_1(monkeypatch, tmp_path, capsys):
    monkeypatch.setenv("H2R_TOL", "jacobi=1e-30")
    out = tmp_path / "report.json"
    assert main(["verify", "--suite", "jacobi", "--out", str(out)]) == 1
    report = json.loads(out.read_text())
    assert report["passed"] is False
    error = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
    assert error["error"] == "InvariantFailure"
    assert "jacobi.analytic_fields" in error["details"]["failed"]

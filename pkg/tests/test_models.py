import json

import numpy as np
import pytest
from pydantic import ValidationError

from src.models import (
    BoundaryData,
    Command,
    DomainError,
    Family,
    H2RError,
    JobConfig,
    Model,
    OutputFormat,
    Point2H,
    SourceData,
    StripField,
    ZeroModeError,
    x_grid,
)


class TestPoints:
    def test_disk_point_must_be_inside(self):
        with pytest.raises(DomainError):
            Point2H(0.8, 0.8)

    def test_halfplane_point_must_be_above_axis(self):
        with pytest.raises(DomainError):
            Point2H(0.0, 0.0, Model.HALF_PLANE)

    def test_roundtrip_complex(self):
        p = Point2H.from_complex(0.1 + 0.2j)
        assert p.as_complex() == 0.1 + 0.2j
        assert p.to_dict() == {"u": 0.1, "v": 0.2, "model": "disk"}


class TestErrors:
    def test_details_are_json_ready(self):
        err = ZeroModeError("bad", mean=np.float64(0.5), trace=np.arange(3), z=1 + 2j)
        payload = err.to_dict()
        assert payload["error"] == "ZeroModeError"
        assert payload["details"]["trace"] == [0, 1, 2]
        assert payload["details"]["z"] == {"re": 1.0, "im": 2.0}
        json.dumps(payload)

    def test_hierarchy(self):
        assert issubclass(ZeroModeError, DomainError)
        assert issubclass(DomainError, ValueError)
        assert issubclass(DomainError, H2RError)


class TestStripField:
    def test_grid_layout(self):
        field = StripField.from_function(4.0, 16, 9, lambda x, t: x + 0 * t)
        assert field.values.shape == (16, 9)
        assert field.x[0] == -4.0
        assert field.dx == pytest.approx(0.5)
        assert field.t[-1] == pytest.approx(np.pi)
        np.testing.assert_allclose(field.trace_minus, field.x)

    def test_grid_index(self):
        field = StripField.from_function(4.0, 16, 9, lambda x, t: x * t)
        assert field.grid_index(field.x[3], field.t[2]) == (3, 2)
        with pytest.raises(DomainError):
            field.grid_index(field.x[3] + 0.1, field.t[2])
        with pytest.raises(DomainError):
            field.grid_index(10.0, 0.0)

    def test_too_small(self):
        with pytest.raises(DomainError):
            StripField(1.0, np.zeros((2, 5)))

    def test_rows(self):
        field = StripField.from_function(1.0, 4, 3, lambda x, t: x * 0 + 1.0)
        rows = list(field.rows())
        assert len(rows) == 12
        assert rows[0] == (-1.0, 0.0, 1.0)


class TestBoundaryAndSource:
    def test_mismatched_traces(self):
        with pytest.raises(DomainError):
            BoundaryData(1.0, np.zeros(8), np.zeros(6))

    def test_moments(self):
        bd = BoundaryData.from_functions(10.0, 256, lambda x: np.exp(-x * x), lambda x: x * np.exp(-x * x))
        assert bd.mean_plus == pytest.approx(np.sqrt(np.pi), rel=1e-10)
        assert bd.first_moment_plus == pytest.approx(0.0, abs=1e-12)
        assert bd.first_moment_minus == pytest.approx(0.5 * np.sqrt(np.pi), rel=1e-10)

    def test_source_rows_are_cleared(self):
        src = SourceData.from_function(2.0, 8, 5, lambda x, t: np.ones_like(x * t))
        assert np.all(src.ftilde[:, 0] == 0.0)
        assert np.all(src.ftilde[:, -1] == 0.0)

    def test_source_with_boundary_rows_rejected(self):
        with pytest.raises(DomainError):
            SourceData(2.0, np.ones((8, 5)))

    def test_source_arithmetic(self):
        src = SourceData.from_function(2.0, 8, 5, lambda x, t: x * np.sin(t))
        np.testing.assert_allclose((2.0 * src + src).ftilde, 3.0 * src.ftilde)

    def test_x_grid_is_periodic(self):
        x = x_grid(5.0, 10)
        assert x[0] == -5.0
        assert x[-1] == pytest.approx(4.0)


class TestJobConfig:
    def test_lambda_alias_and_default_format(self):
        config = JobConfig.model_validate({"command": "mesh", "family": "parabolic", "lambda": 2.0})
        assert config.lam == 2.0
        assert config.family == Family.PARABOLIC
        assert config.output_format == OutputFormat.OBJ

    def test_explicit_format(self):
        config = JobConfig(command=Command.HEIGHT, family=Family.TALL, format=OutputFormat.CSV)
        assert config.output_format == OutputFormat.CSV

    @pytest.mark.parametrize("data", [
        {"command": "profile"},
        {"command": "profile", "family": "catenoid"},
        {"command": "profile", "family": "tall"},
        {"command": "solve"},
        {"command": "solve", "boundary": {"kind": "preset"}, "grid": [8, 64]},
        {"command": "height", "family": "tall", "d": 1.5},
        {"command": "verify", "unknown": 1},
    ])
    def test_invalid(self, data):
        with pytest.raises(ValidationError):
            JobConfig.model_validate(data)

    def test_job_file(self, tmp_path):
        path = tmp_path / "job.json"
        path.write_text(json.dumps({"X": 10.0, "nx": 64, "nt": 33, "boundary": {"kind": "preset", "name": "hat"}}))
        config = JobConfig.from_job_file(path, format="json", output=None)
        assert config.command == Command.SOLVE
        assert config.grid == (64, 33)
        assert config.X == 10.0
        assert config.output_format == OutputFormat.JSON

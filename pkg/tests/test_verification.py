import time

import numpy as np
import pytest

from src.config import Tolerances
from src.geometry import catenoid, tall
from src.models.errors import DomainError
from src.models.jobs import Suite
from src.verification import Check, Measurement, Outcome, VerificationEngine, build_checks
from src.verification import suites


def _passing(rng):
    return Measurement(0.5, 1.0)


def _failing(rng):
    return Measurement(2.0, 1.0)


def _raising(rng):
    raise DomainError("bad input", x=1)


def _crashing(rng):
    raise RuntimeError("boom")


def _slow(rng):
    time.sleep(0.5)
    return Measurement(0.0, 1.0)


def _random(rng):
    return Measurement(float(rng.uniform()), 1.0)


def test_outcomes():
    engine = VerificationEngine(seed=3)
    engine.register_all([
        Check("pass", Suite.GEOMETRY, _passing),
        Check("fail", Suite.GEOMETRY, _failing),
        Check("raise", Suite.JACOBI, _raising),
        Check("crash", Suite.JACOBI, _crashing),
        Check("slow", Suite.BVP, _slow, timeout=0.05),
    ])
    report = engine.run_sync()
    outcomes = {r.name: r.outcome for r in report.results}
    assert outcomes == {
        "pass": Outcome.PASSED,
        "fail": Outcome.FAILED,
        "raise": Outcome.ERROR,
        "crash": Outcome.ERROR,
        "slow": Outcome.TIMEOUT,
    }
    assert not report.passed
    assert report.tally["passed_weight"] == 1.0
    assert report.tally["total_weight"] == 5.0
    errors = {r.name: r.error for r in report.failures()}
    assert errors["raise"]["error"] == "DomainError"
    assert errors["crash"]["error"] == "RuntimeError"


def test_threshold():
    engine = VerificationEngine(threshold=0.5)
    engine.register_all([
        Check("a", Suite.GEOMETRY, _passing, weight=3.0),
        Check("b", Suite.GEOMETRY, _failing),
    ])
    report = engine.run_sync()
    assert report.tally["pass_ratio"] == pytest.approx(0.75)
    assert report.passed


def test_empty_run_does_not_pass():
    assert not VerificationEngine().run_sync().passed


def test_duplicate_names_rejected():
    engine = VerificationEngine()
    engine.register_check(Check("a", Suite.GEOMETRY, _passing))
    with pytest.raises(ValueError):
        engine.register_check(Check("a", Suite.BVP, _passing))


def test_suite_filter():
    engine = VerificationEngine()
    engine.register_all([Check("g", Suite.GEOMETRY, _passing), Check("b", Suite.BVP, _passing)])
    assert [c.name for c in engine.get_checks(Suite.BVP)] == ["b"]
    report = engine.run_sync(Suite.GEOMETRY)
    assert report.suites == ["geometry"]
    assert len(report.results) == 1


def test_seeded_streams_are_reproducible():
    def values(seed):
        engine = VerificationEngine(seed=seed)
        engine.register_all([Check(f"r{i}", Suite.GEOMETRY, _random) for i in range(3)])
        return [r.value for r in engine.run_sync().results]

    first = values(7)
    assert first == values(7)
    assert first != values(8)
    assert len(set(first)) == 3


def test_report_payload():
    engine = VerificationEngine()
    engine.register_check(Check("h", Suite.GEOMETRY, lambda rng: Measurement(1e-9, 1e-6, {"max_H": 1e-9})))
    report = engine.run_sync()
    payload = report.to_dict()
    assert payload["passed"] is True
    assert payload["max_mean_curvature"] == 1e-9
    assert payload["results"][0]["suite"] == "geometry"
    assert "minimality" in payload["tolerances"]


def test_registered_checks(tol):
    checks = build_checks(tol)
    names = [c.name for c in checks]
    assert len(names) == len(set(names))
    assert {c.suite for c in checks} == {Suite.GEOMETRY, Suite.JACOBI, Suite.BVP}
    assert "bvp.zero_mode" in names
    assert {"tall.regeneration", "bvp.traces"} <= set(names)


def test_plateau_in_catenoid_heights_fails(monkeypatch, rng):
    # every other condition holds; only strict decrease is broken
    monkeypatch.setattr(catenoid, "height", lambda k, tol=None: np.pi - 0.01 if k < 1e-3 else 0.3)
    measurement = suites.catenoid_height(rng, Tolerances())
    assert measurement.value == 0.0
    assert not measurement.passed


def test_plateau_in_tall_heights_fails(monkeypatch, rng):
    monkeypatch.setattr(tall, "height_tall", lambda d, tol=None: 4.0)
    assert not suites.tall_height(rng, Tolerances()).passed


@pytest.mark.slow
def test_jacobi_suite_passes(tol):
    engine = VerificationEngine(seed=11, tol=tol)
    engine.register_all(build_checks(tol))
    report = engine.run_sync(Suite.JACOBI)
    assert report.passed, [r.to_dict() for r in report.failures()]

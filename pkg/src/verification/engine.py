"""Verification engine: runs registered checks concurrently and tallies the outcome."""

import asyncio
import logging
import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Iterable, Optional

import numpy as np

from ..config import Tolerances
from ..models.errors import H2RError
from ..models.jobs import Suite

logger = logging.getLogger(__name__)


class Outcome(Enum):
    PASSED = "passed"
    FAILED = "failed"
    TIMEOUT = "timeout"
    ERROR = "error"


@dataclass
class Measurement:
    """A measured deviation and the bound it must not exceed."""
    value: float
    bound: float
    detail: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return bool(np.isfinite(self.value) and self.value <= self.bound)


@dataclass
class Check:
    """
    One invariant of the library.

    ``func`` receives a seeded generator and returns a Measurement.
    """
    name: str
    suite: Suite
    func: Callable[[np.random.Generator], Measurement]
    weight: float = 1.0
    timeout: Optional[float] = None


@dataclass
class CheckResult:
    name: str
    suite: Suite
    outcome: Outcome
    weight: float = 1.0
    value: Optional[float] = None
    bound: Optional[float] = None
    detail: dict = field(default_factory=dict)
    error: Optional[dict] = None
    elapsed: float = 0.0

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "suite": self.suite.value,
            "outcome": self.outcome.value,
            "value": self.value,
            "bound": self.bound,
            "detail": self.detail,
            "error": self.error,
            "elapsed": round(self.elapsed, 6),
        }


@dataclass
class VerificationReport:
    """Results of one run with the tally that decides the exit status."""
    results: list[CheckResult]
    tally: dict
    seed: int
    suites: list[str]
    tolerances: dict

    @property
    def passed(self) -> bool:
        return bool(self.tally.get("would_pass", False))

    @property
    def max_mean_curvature(self) -> Optional[float]:
        values = [r.detail["max_H"] for r in self.results if "max_H" in r.detail]
        return max(values) if values else None

    def failures(self) -> list[CheckResult]:
        return [r for r in self.results if r.outcome != Outcome.PASSED]

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "seed": self.seed,
            "suites": self.suites,
            "tolerances": self.tolerances,
            "tally": self.tally,
            "max_mean_curvature": self.max_mean_curvature,
            "results": [r.to_dict() for r in self.results],
        }


class VerificationEngine:
    """
    Runs checks in worker threads with a per-check timeout.

    Every check gets its own generator spawned from the run seed, so the
    report does not depend on scheduling. A run passes when the weighted
    share of passed checks reaches ``threshold``.
    """

    def __init__(
        self,
        seed: int = 0,
        tol: Optional[Tolerances] = None,
        check_timeout: float = 600.0,
        threshold: float = 1.0,
    ):
        self.seed = seed
        self.tol = tol or Tolerances()
        self.check_timeout = check_timeout
        self.threshold = threshold
        self._checks: list[Check] = []

    def register_check(self, check: Check):
        if any(c.name == check.name for c in self._checks):
            raise ValueError(f"check '{check.name}' is already registered")
        self._checks.append(check)

    def register_all(self, checks: Iterable[Check]):
        for check in checks:
            self.register_check(check)

    def get_checks(self, suite: Suite = Suite.ALL) -> list[Check]:
        if suite == Suite.ALL:
            return list(self._checks)
        return [c for c in self._checks if c.suite == suite]

    async def run_check(self, check: Check, rng: np.random.Generator) -> CheckResult:
        start = time.perf_counter()
        timeout = check.timeout or self.check_timeout
        try:
            measured = await asyncio.wait_for(asyncio.to_thread(check.func, rng), timeout=timeout)
        except asyncio.TimeoutError:
            logger.warning("check %s timed out after %gs", check.name, timeout)
            return CheckResult(
                check.name, check.suite, Outcome.TIMEOUT, check.weight,
                error={"error": "Timeout", "message": f"exceeded {timeout}s"},
                elapsed=time.perf_counter() - start,
            )
        except H2RError as exc:
            logger.error("check %s raised %s: %s", check.name, type(exc).__name__, exc.message)
            return CheckResult(
                check.name, check.suite, Outcome.ERROR, check.weight,
                error=exc.to_dict(), elapsed=time.perf_counter() - start,
            )
        except Exception as exc:
            logger.exception("check %s crashed", check.name)
            return CheckResult(
                check.name, check.suite, Outcome.ERROR, check.weight,
                error={"error": type(exc).__name__, "message": str(exc)},
                elapsed=time.perf_counter() - start,
            )

        outcome = Outcome.PASSED if measured.passed else Outcome.FAILED
        log = logger.debug if measured.passed else logger.warning
        log("check %s %s: %.3g (bound %.3g)", check.name, outcome.value, measured.value, measured.bound)
        return CheckResult(
            check.name, check.suite, outcome, check.weight,
            value=float(measured.value), bound=float(measured.bound),
            detail=measured.detail, elapsed=time.perf_counter() - start,
        )

    def get_tally(self, results: list[CheckResult]) -> dict:
        weights = {outcome: 0.0 for outcome in Outcome}
        for result in results:
            weights[result.outcome] += result.weight
        total = sum(weights.values())
        pass_ratio = weights[Outcome.PASSED] / total if total > 0 else 0.0
        return {
            **{f"{outcome.value}_weight": w for outcome, w in weights.items()},
            "total_weight": total,
            "pass_ratio": pass_ratio,
            "check_count": len(results),
            "threshold": self.threshold,
            "would_pass": total > 0 and pass_ratio >= self.threshold,
        }

    async def run(self, suite: Suite = Suite.ALL) -> VerificationReport:
        checks = self.get_checks(suite)
        streams = np.random.SeedSequence(self.seed).spawn(len(checks))
        logger.info("running %d checks (suite=%s, seed=%d)", len(checks), suite.value, self.seed)

        results = await asyncio.gather(*[
            self.run_check(check, np.random.default_rng(stream))
            for check, stream in zip(checks, streams)
        ])
        tally = self.get_tally(list(results))
        logger.info("verification %s: %.1f%% of weight passed", "passed" if tally["would_pass"] else "failed", 100 * tally["pass_ratio"])
        return VerificationReport(
            results=list(results),
            tally=tally,
            seed=self.seed,
            suites=sorted({c.suite.value for c in checks}),
            tolerances=self.tol.to_dict(),
        )

    def run_sync(self, suite: Suite = Suite.ALL) -> VerificationReport:
        return asyncio.run(self.run(suite))

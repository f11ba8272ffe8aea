from .engine import Check, CheckResult, Measurement, Outcome, VerificationEngine, VerificationReport
from .suites import build_checks

__all__ = [
    "Check",
    "CheckResult",
    "Measurement",
    "Outcome",
    "VerificationEngine",
    "VerificationReport",
    "build_checks",
]

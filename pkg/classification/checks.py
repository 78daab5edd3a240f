import enum
from dataclasses import dataclass, field

import mpmath


class CheckStatus(enum.Enum):
    PASS = "pass"
    FAIL = "fail"
    SKIPPED = "skipped"


@dataclass(frozen=True)
class CheckResult:
    """
    One verified statement.

    measured and expected are strings: either decimal renderings (numeric
    checks, compared against tolerance) or exact renderings (symbolic checks,
    tolerance 0).
    """

    id: str
    anchor: str
    status: CheckStatus
    measured: str = ""
    expected: str = ""
    tolerance: float = 0.0
    notes: str = ""

    @property
    def passed(self):
        return self.status is not CheckStatus.FAIL


def exact_check(check_id, anchor, measured, expected, notes=""):
    """Symbolic check: Pass iff the two values are equal."""
    status = CheckStatus.PASS if measured == expected else CheckStatus.FAIL
    return CheckResult(check_id, anchor, status, str(measured), str(expected), 0.0, notes)


def numeric_check(check_id, anchor, measured, expected, tolerance, relative=True, digits=20, notes=""):
    """Numeric check against tolerance; relative mode scales by max(|expected|, 1e-300)."""
    measured = mpmath.mpf(measured)
    expected = mpmath.mpf(expected)
    scale = max(abs(expected), mpmath.mpf("1e-300")) if relative else 1
    allowed = mpmath.mpf(tolerance) * scale
    status = CheckStatus.PASS if abs(measured - expected) <= allowed else CheckStatus.FAIL
    return CheckResult(
        check_id,
        anchor,
        status,
        mpmath.nstr(measured, digits),
        mpmath.nstr(expected, digits),
        float(allowed),
        notes,
    )


def predicate_check(check_id, anchor, holds, measured="", expected="true", notes=""):
    status = CheckStatus.PASS if holds else CheckStatus.FAIL
    return CheckResult(check_id, anchor, status, str(measured), expected, 0.0, notes)


def skipped(check_id, anchor, notes):
    return CheckResult(check_id, anchor, CheckStatus.SKIPPED, notes=notes)


@dataclass
class VerificationReport:
    n: int
    suites: list
    constant_mode: str
    flux_checks: dict
    checks: list = field(default_factory=list)
    gamma_estimate: str = None
    alpha_from_mass: str = None
    curvature_constant: str = ""
    config: dict = field(default_factory=dict)
    toolkit_version: str = ""
    coverage: dict = field(default_factory=dict)
    internal_errors: list = field(default_factory=list)

    @property
    def passed(self):
        return all(check.passed for check in self.checks)

    @property
    def failures(self):
        return [check for check in self.checks if check.status is CheckStatus.FAIL]

    def sort_checks(self):
        """Aggregation order is fixed by check id, whatever order checks ran in."""
        self.checks.sort(key=lambda check: check.id)
        return self

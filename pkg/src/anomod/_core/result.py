"""Result objects returned from verification runs.

This module is deliberately self-contained:
- it provides :class:`SuiteResult`, the merged outcome of a suite run
- it contains the conversion of exact values into JSON-ish Python values
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from fractions import Fraction
from typing import Any

from .gradedring import GradedElement, serialize
from .qseries import QSeries
from .types import NumericCheck, VerificationReport

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_ERROR = 2


def to_python(value: Any) -> Any:
    """Convert exact algebra values into JSON-ish Python values.

    Fractions print as ``"p/q"`` (integers stay integers), graded elements in
    their serialized form and q-series as ``{"q^(h/2)": coefficient}``.

    Example:
        >>> to_python(Fraction(1, 24))
        '1/24'
    """
    if value is None or isinstance(value, (str, bool, int, float)):
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else str(value)
    if isinstance(value, complex):
        return [value.real, value.imag]
    if isinstance(value, GradedElement):
        return serialize(value)
    if isinstance(value, QSeries):
        return {f"q^({h}/2)": to_python(v) for h, v in value.items()}
    if isinstance(value, (VerificationReport, NumericCheck)):
        return value.to_dict()
    if isinstance(value, Mapping):
        return {str(k): to_python(v) for k, v in value.items()}
    if isinstance(value, Iterable):
        return [to_python(v) for v in value]
    return str(value)


def report_sort_key(report: VerificationReport) -> tuple[str, str, str, str]:
    return (report.check_id, report.ranks, report.xi_mode, report.euler_mode or "")


class SuiteResult:
    """Merged reports of a suite run, in canonical order."""

    def __init__(self, reports: Iterable[VerificationReport] = ()) -> None:
        self._reports = sorted(reports, key=report_sort_key)

    @property
    def reports(self) -> list[VerificationReport]:
        return list(self._reports)

    def __len__(self) -> int:
        return len(self._reports)

    def get_failures(self) -> list[VerificationReport]:
        return [r for r in self._reports if r.status == "fail"]

    def get_findings(self) -> list[VerificationReport]:
        """Info records: recorded findings, never pass/fail."""
        return [r for r in self._reports if r.status == "info"]

    def get_summary(self) -> dict[str, int]:
        counts = {"passed": 0, "failed": 0, "info": 0}
        for report in self._reports:
            key = {"pass": "passed", "fail": "failed"}.get(report.status, "info")
            counts[key] += 1
        counts["total"] = len(self._reports)
        return counts

    @property
    def passed(self) -> bool:
        return not self.get_failures()

    @property
    def exit_code(self) -> int:
        return EXIT_PASS if self.passed else EXIT_FAIL

    def to_document(self) -> dict[str, Any]:
        """JSON document ``{"reports": [...], "summary": {...}}``."""
        return {
            "reports": [report.to_dict() for report in self._reports],
            "summary": self.get_summary(),
        }

"""Structured outcome of a verification check."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

REPORT_HEADER = ["check", "passed", "worst_deviation", "tolerance", "n_items", "detail"]


def fmt(x: float) -> str:
    """17 significant digits, the precision used in every emitted CSV."""
    return f"{x:.17g}"


@dataclass
class VerificationReport:
    check: str
    passed: bool
    worst_deviation: float
    tolerance: float
    n_items: int
    failures: list[str] = field(default_factory=list)
    details: dict[str, str] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.passed

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        line = (
            f"[{status}] {self.check}: worst={self.worst_deviation:.3e} "
            f"tol={self.tolerance:.3e} over {self.n_items} items"
        )
        if self.failures:
            line += f"; first failure: {self.failures[0]}"
        return line

    def csv_row(self) -> list[str]:
        detail = "; ".join(self.failures + [f"{k}={v}" for k, v in self.details.items()])
        return [
            self.check,
            "pass" if self.passed else "fail",
            fmt(self.worst_deviation),
            fmt(self.tolerance),
            str(self.n_items),
            detail,
        ]


def reports_to_csv(reports) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(REPORT_HEADER)
    for r in reports:
        w.writerow(r.csv_row())
    return buf.getvalue()

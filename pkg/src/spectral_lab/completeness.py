"""Completeness of ``Lambda_beta`` through the Jorgensen-Pedersen function Q.

``Q(xi) = sum_lambda |mu_hat(xi + lambda)|^2`` is identically 1 (almost
everywhere) exactly when ``Lambda`` is a spectrum.  For this measure
``|mu_hat|`` depends only on the first coordinate, so Q over
``{(n, beta(n))}`` is the same series ``sum_n sinc^2(n + xi_1)`` whatever beta
is; the truncated sum below never evaluates beta at all.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

import numpy as np

from .errors import ExcludedPointError
from .measure import SelfAffineSystem, fourier_closed_form
from .report import VerificationReport, fmt
from .spectra import BetaFamily, check_orthogonal_combinatorial

EXCLUSION_RADIUS = 1e-9
DEFAULT_N = 10_000
GRID_OFFSET = 1.0 / 64.0


def _frac_distance(x1: float) -> float:
    return abs(x1 - round(x1))


def _check_not_excluded(x1: float) -> None:
    if _frac_distance(x1) <= EXCLUSION_RADIUS:
        raise ExcludedPointError(f"xi_1 = {x1!r} is within {EXCLUSION_RADIUS:g} of an integer")


def tail_bound(x1: float, N: int) -> float:
    """Majorant of ``sum_{|n|>N} 1 / (pi (n + xi_1))^2``.

    Integral comparison gives ``(1/pi^2) [1/(N + 1/2 + x) + 1/(N + 1/2 - x)]``
    with ``x = |xi_1|``; for ``|xi_1| <= 1`` the simpler
    ``(2/pi^2) / (N - 1 - frac)`` dominates it and is what we report.
    """
    x = abs(x1)
    if x <= 1:
        return (2.0 / math.pi**2) / (N - 1 - _frac_distance(x1))
    if N <= x + 1:
        raise ValueError(f"truncation N={N} must exceed |xi_1| + 1")
    return (1.0 / math.pi**2) * (1.0 / (N + 0.5 + x) + 1.0 / (N + 0.5 - x))


@dataclass(frozen=True)
class QReport:
    xi: tuple[float, float]
    N: int
    partial_sum: float
    tail_bound: float
    passed: bool

    @property
    def deficit(self) -> float:
        return 1.0 - self.partial_sum

    def csv_row(self) -> list[str]:
        return [
            fmt(self.xi[0]),
            fmt(self.xi[1]),
            str(self.N),
            fmt(self.partial_sum),
            fmt(self.tail_bound),
            "pass" if self.passed else "fail",
        ]


QREPORT_HEADER = ["xi1", "xi2", "N", "partial_sum", "tail_bound", "verdict"]


def _q_partial_sum(sys: SelfAffineSystem, xi1: float, N: int) -> float:
    n = np.arange(-N, N + 1, dtype=float)
    shifted = np.column_stack([n + xi1, np.zeros_like(n)])
    vals = fourier_closed_form(sys, shifted)
    # np.sum is pairwise, so the result does not depend on the caller
    return float(np.sum(np.abs(vals) ** 2))


def q_lambda_truncated(sys: SelfAffineSystem, family: BetaFamily, xi, N: int = DEFAULT_N) -> QReport:
    """Truncated Q over ``|n| <= N`` with a self-certifying tail bound.

    Passes iff ``|partial + tail/2 - 1| <= tail``.
    """
    sys.require_default("the completeness check")
    if N < 2:
        raise ValueError("N must be at least 2")
    x1, x2 = float(xi[0]), float(xi[1])
    _check_not_excluded(x1)
    s = _q_partial_sum(sys, x1, N)
    b = tail_bound(x1, N)
    return QReport((x1, x2), N, s, b, abs(s + 0.5 * b - 1.0) <= b)


def summation_identity_residual(xi1: float, N: int) -> float:
    """``|sum_{|n|<=N} (n + xi_1)^-2 - pi^2 / sin^2(pi xi_1)|``."""
    _check_not_excluded(xi1)
    n = np.arange(-N, N + 1, dtype=float)
    partial = float(np.sum(1.0 / (n + xi1) ** 2))
    return abs(partial - math.pi**2 / math.sin(math.pi * xi1) ** 2)


def default_grid(rows: int = 10, cols: int = 10) -> np.ndarray:
    """Deterministic ``rows x cols`` grid over (0, 1) x [-5, 5].

    First coordinates are cell midpoints shifted by 1/64, which keeps them
    off 1/2, 1/4, 1/3 and other small-denominator rationals.
    """
    x1 = (np.arange(rows) + 0.5) / rows + GRID_OFFSET
    x1 = np.where(x1 >= 1, x1 - 1, x1)
    x2 = -5.0 + 10.0 * (np.arange(cols) + 0.5) / cols
    return np.array([(a, b) for a in x1 for b in x2])


GRID_SPEC = "10x10 midpoints of (0,1)x[-5,5], xi1 shifted by 1/64"


def jp_spectrum_check(
    sys: SelfAffineSystem,
    family: BetaFamily,
    grid=None,
    N: int = DEFAULT_N,
) -> tuple[VerificationReport, list[QReport]]:
    """Run :func:`q_lambda_truncated` at every grid point."""
    grid_spec = GRID_SPEC if grid is None else "caller-supplied"
    grid = default_grid() if grid is None else np.asarray(grid, dtype=float).reshape(-1, 2)
    bad = [tuple(p) for p in grid if _frac_distance(p[0]) <= EXCLUSION_RADIUS]
    if bad:
        raise ExcludedPointError(f"grid contains excluded points, e.g. {bad[0]}")
    rows = [q_lambda_truncated(sys, family, p, N) for p in grid]
    worst = max(abs(q.partial_sum - 1.0) for q in rows)
    failures = [f"Q{q.xi} = {q.partial_sum:.17g} (tail bound {q.tail_bound:.3e})" for q in rows if not q.passed]
    report = VerificationReport(
        check="completeness-jp",
        passed=not failures,
        worst_deviation=worst,
        tolerance=max(q.tail_bound for q in rows),
        n_items=len(rows),
        failures=failures,
        details={"grid": grid_spec, "N": str(N), "family": family.describe()},
    )
    return report, rows


def q_points(sys: SelfAffineSystem, points, xi) -> float:
    """Q over an explicit finite point list (no tail term)."""
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    vals = fourier_closed_form(sys, pts + np.asarray(xi, dtype=float))
    return float(np.sum(np.abs(vals) ** 2))


def jp_points_check(
    sys: SelfAffineSystem,
    points,
    grid=None,
    tol: float = 1e-12,
    check_orthogonality: bool = True,
) -> VerificationReport:
    """Raw-point variant: orthogonality first, then Bessel's inequality ``Q <= 1`` on the grid.

    A finite window of a spectrum can only fall short of 1; any excess proves
    the list is not orthogonal.
    """
    if check_orthogonality:
        ortho = check_orthogonal_combinatorial(points)
        if not ortho.passed:
            return ortho
    grid = default_grid() if grid is None else np.asarray(grid, dtype=float).reshape(-1, 2)
    qs = np.array([q_points(sys, points, p) for p in grid])
    excess = float(qs.max() - 1.0)
    failures = [f"Q{tuple(p)} = {q:.17g} > 1" for p, q in zip(grid, qs) if q > 1 + tol]
    return VerificationReport(
        check="completeness-points",
        passed=not failures,
        worst_deviation=max(excess, 0.0),
        tolerance=tol,
        n_items=len(grid),
        failures=failures,
    )


def qreports_to_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(QREPORT_HEADER)
    for q in rows:
        w.writerow(q.csv_row())
    return buf.getvalue()


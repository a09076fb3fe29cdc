"""Verification suites and the (t, s) sweep shared by the CLI and the tests."""

from __future__ import annotations

import csv
import io
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .completeness import DEFAULT_N, jp_points_check, jp_spectrum_check
from .density import (
    CountingProfile,
    RadiusSchedule,
    counting_profile,
    density_from_profile,
    dimension_from_profile,
)
from .measure import DEFAULT_SYSTEM, SelfAffineSystem
from .report import VerificationReport, fmt
from .spectra import BetaFamily, DensityCalibrated, check_orthogonal_combinatorial, check_orthogonal_gram, spectrum_window

# Verdict tolerances; printed with every report.
DIM_TOL = 0.03
DENSITY_REL_TOL = 0.05
GRAM_TOL = 1e-12
GRAM_MAX_WINDOW = 512
DEFAULT_WINDOW = 200

SWEEP_T = tuple(k / 10 for k in range(1, 11))
SWEEP_S = (0.5, 1.0, 2.0, 5.0)
SWEEP_COUNT_RANGE = (1e8, 1e12)
SWEEP_HEADER = ["t", "s", "dim_est", "density_est", "q_worst_dev", "verdict"]


def tolerance_banner() -> str:
    return (
        f"# tolerances: |dim-t|<={DIM_TOL}, |density-s|/s<={DENSITY_REL_TOL}, "
        f"gram off-diagonal<={GRAM_TOL:g}, Q deficit<=tail bound"
    )


def verify_family(
    family: BetaFamily,
    window: int = DEFAULT_WINDOW,
    N: int = DEFAULT_N,
    sys: SelfAffineSystem = DEFAULT_SYSTEM,
    grid=None,
) -> list[VerificationReport]:
    """Combinatorial orthogonality, Gram matrix and JP completeness for ``Lambda_beta``."""
    pts = spectrum_window(family, window)
    gram_pts = pts if window <= GRAM_MAX_WINDOW else spectrum_window(family, GRAM_MAX_WINDOW)
    jp, _ = jp_spectrum_check(sys, family, grid, N)
    return [
        check_orthogonal_combinatorial(pts),
        check_orthogonal_gram(gram_pts, sys, GRAM_TOL),
        jp,
    ]


def verify_points(points, sys: SelfAffineSystem = DEFAULT_SYSTEM, grid=None) -> list[VerificationReport]:
    """Checks for an explicit finite point list, e.g. read from a spectrum file."""
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    reports = [check_orthogonal_combinatorial(pts)]
    if not reports[0].passed:
        return reports
    near = pts[np.abs(pts[:, 0]) <= GRAM_MAX_WINDOW]
    reports.append(check_orthogonal_gram(near, sys, GRAM_TOL))
    reports.append(jp_points_check(sys, pts, grid, check_orthogonality=False))
    return reports


def sweep_schedule(t: float, s: float, steps: int = 20) -> RadiusSchedule:
    """Radii on which the expected count ``s h^t`` runs from 1e8 to 1e12.

    A fixed radius range would leave small ``t`` cells with only a handful of
    points, where the floor in the count dominates both estimators; near
    ``t = 1`` the ``n^2`` term of the distance decays only like
    ``n^(2 - 2/t)`` and needs the large counts.
    """
    h_min = (SWEEP_COUNT_RANGE[0] / s) ** (1.0 / t)
    h_max = (SWEEP_COUNT_RANGE[1] / s) ** (1.0 / t)
    return RadiusSchedule.spanning(h_min, h_max, steps)


@dataclass
class SweepCell:
    t: float
    s: float
    dim_est: float
    density_est: float
    q_worst_dev: float
    passed: bool
    profile: CountingProfile = field(repr=False)
    reports: list[VerificationReport] = field(default_factory=list, repr=False)

    def csv_row(self) -> list[str]:
        return [
            fmt(self.t),
            fmt(self.s),
            fmt(self.dim_est),
            fmt(self.density_est),
            fmt(self.q_worst_dev),
            "pass" if self.passed else "fail",
        ]

    def plot_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["log_h", "log_count"])
        for h, c in zip(self.profile.h, self.profile.counts):
            w.writerow([fmt(math.log(h)), fmt(math.log(c))])
        return buf.getvalue()


def run_cell(
    t: float,
    s: float,
    sched: RadiusSchedule | None = None,
    window: int = DEFAULT_WINDOW,
    N: int = DEFAULT_N,
    steps: int = 20,
) -> SweepCell:
    """One sweep cell; without ``sched`` the radii come from :func:`sweep_schedule`."""
    family = DensityCalibrated(t, s)
    sched = sched or sweep_schedule(t, s, steps)
    profile = counting_profile(family, sched)
    dim = dimension_from_profile(profile)
    dens = density_from_profile(profile, t)
    reports = verify_family(family, window, N)
    q_dev = reports[-1].worst_deviation
    ok = (
        abs(dim.slope_fit - t) <= DIM_TOL
        and abs(dens.value - s) / s <= DENSITY_REL_TOL
        and all(r.passed for r in reports)
    )
    return SweepCell(t, s, dim.slope_fit, dens.value, q_dev, ok, profile, reports)


def worker_count() -> int:
    """Workers allowed by ``SPECTRAL_LAB_THREADS`` (0 or unset means one per CPU)."""
    raw = os.environ.get("SPECTRAL_LAB_THREADS", "0").strip() or "0"
    n = int(raw)
    return n if n > 0 else (os.cpu_count() or 1)


def run_sweep(
    ts=SWEEP_T,
    ss=SWEEP_S,
    sched: RadiusSchedule | None = None,
    window: int = DEFAULT_WINDOW,
    N: int = DEFAULT_N,
    workers: int | None = None,
    steps: int = 20,
) -> list[SweepCell]:
    """All (t, s) cells in row-major (t, s) order regardless of completion order."""
    cells = [(t, s) for t in ts for s in ss]
    workers = worker_count() if workers is None else workers

    def one(cell):
        return run_cell(cell[0], cell[1], sched, window, N, steps)

    if workers <= 1:
        return [one(c) for c in cells]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(one, cells))


def sweep_to_csv(cells) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SWEEP_HEADER)
    for c in cells:
        w.writerow(c.csv_row())
    return buf.getvalue()


def svg_line_chart(x, y, title: str = "", width: int = 480, height: int = 320) -> str:
    """Self-contained SVG polyline chart with axis extents in the corners."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    pad = 40
    x0, x1 = float(x.min()), float(x.max())
    y0, y1 = float(y.min()), float(y.max())
    sx = (width - 2 * pad) / ((x1 - x0) or 1.0)
    sy = (height - 2 * pad) / ((y1 - y0) or 1.0)
    pts = " ".join(f"{pad + (a - x0) * sx:.2f},{height - pad - (b - y0) * sy:.2f}" for a, b in zip(x, y))
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">\n'
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>\n'
        f'<line x1="{pad}" y1="{height - pad}" x2="{width - pad}" y2="{height - pad}" stroke="black"/>\n'
        f'<line x1="{pad}" y1="{pad}" x2="{pad}" y2="{height - pad}" stroke="black"/>\n'
        f'<polyline fill="none" stroke="steelblue" stroke-width="2" points="{pts}"/>\n'
        f'<text x="{width / 2}" y="{pad / 2}" text-anchor="middle" font-size="14">{title}</text>\n'
        f'<text x="{pad}" y="{height - pad / 4}" font-size="10">{x0:.3g}</text>\n'
        f'<text x="{width - pad}" y="{height - pad / 4}" text-anchor="end" font-size="10">{x1:.3g}</text>\n'
        f'<text x="2" y="{height - pad}" font-size="10">{y0:.3g}</text>\n'
        f'<text x="2" y="{pad}" font-size="10">{y1:.3g}</text>\n'
        "</svg>\n"
    )


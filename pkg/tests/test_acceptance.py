"""Acceptance suite: one test per numbered criterion, each printing a PASS/FAIL line.

Run standalone with ``python tests/test_acceptance.py`` for just the lines.
"""

import math
import time
from fractions import Fraction

import numpy as np
import pytest

from spectral_lab import density as dens
from spectral_lab.completeness import default_grid, jp_spectrum_check, summation_identity_residual
from spectral_lab.experiments import DENSITY_REL_TOL, DIM_TOL, run_sweep, verify_family
from spectral_lab.measure import (
    DEFAULT_SYSTEM,
    empirical_fourier,
    fourier_closed_form,
    fourier_product,
    in_zero_set,
    sample_measure,
    zero_set_union_member,
)
from spectral_lab.spectra import (
    DensityCalibrated,
    Exponential,
    Linear,
    PowerLaw,
    PowerLawScaled,
    PowerLog,
    Zero,
    check_orthogonal_gram,
    dimension_family,
    level_set_family,
    spectrum_window,
)

try:
    from conftest import record
except ImportError:  # standalone run from another directory
    from tests.conftest import record

SYS = DEFAULT_SYSTEM

BUILTINS = [
    Zero(),
    Linear(),
    PowerLaw(0.25),
    PowerLaw(0.5),
    PowerLaw(0.75),
    PowerLawScaled(0.5, 2.0),
    PowerLawScaled(1.0, 3.0),
    Exponential(2.0),
    Exponential(3.0),
    PowerLog(0.3),
    PowerLog(1.0),
    DensityCalibrated(0.5, 3.0),
    DensityCalibrated(1.0, 2.0),
]

# estimates from criteria 6-8, checked against the upper bound in criterion 11
ESTIMATES: dict[str, float] = {}


def _elapsed(t0):
    return time.perf_counter() - t0


def test_c01_closed_form_matches_product():
    t0 = time.perf_counter()
    x1 = np.round(np.arange(-160, 161) / 10, 10)
    xi = np.array([(a, b) for a in x1 for b in (0.0, 3.7)])
    worst = float(np.max(np.abs(fourier_product(SYS, xi, 40) - fourier_closed_form(SYS, xi))))
    dt = _elapsed(t0)
    ok = worst <= 1e-9 and dt < 1.0
    record(1, ok, f"max |product - closed| = {worst:.3e} (<= 1e-9) over {len(xi)} points in {dt:.2f}s (< 1s)")
    assert ok


def test_c02_zero_set_equivalence():
    rng = np.random.default_rng(2)
    num = rng.integers(-100 * 2**20, 100 * 2**20 + 1, size=10_000)
    den_exp = rng.integers(0, 21, size=10_000)
    # reduce to a dyadic rational with denominator 2^den_exp, still inside [-100, 100]
    x1 = np.array([float(Fraction(int(n) >> (20 - int(e)), 2 ** int(e))) for n, e in zip(num, den_exp)])
    xi = np.column_stack([x1, rng.uniform(-50, 50, size=10_000)])
    t0 = time.perf_counter()
    direct = np.asarray(in_zero_set(SYS, xi, 1e-9))
    union = np.asarray(zero_set_union_member(SYS, xi, 30, 1e-9))
    dt = _elapsed(t0)
    mismatches = int(np.count_nonzero(direct != union))
    ok = mismatches == 0 and dt < 1.0
    record(2, ok, f"{mismatches} mismatches on 10^4 dyadic points ({int(direct.sum())} zeros) in {dt:.2f}s (< 1s)")
    assert ok


def test_c03_gram_identity():
    t0 = time.perf_counter()
    worst, bad = 0.0, []
    for fam in BUILTINS:
        rep = check_orthogonal_gram(spectrum_window(fam, 200), SYS, 1e-12)
        worst = max(worst, rep.worst_deviation)
        if not rep.passed:
            bad.append(fam.describe())
    dt = _elapsed(t0)
    ok = not bad and dt < 5.0
    record(3, ok, f"worst Gram deviation {worst:.3e} (<= 1e-12) over {len(BUILTINS)} families, N=200, {dt:.2f}s (< 5s)")
    assert ok, bad


def test_c04_completeness():
    t0 = time.perf_counter()
    grid = default_grid()
    sums, ok = {}, True
    worst_deficit, min_deficit = 0.0, 1.0
    for fam in BUILTINS:
        rep, rows = jp_spectrum_check(SYS, fam, grid, 10_000)
        ok &= rep.passed
        sums[fam.describe()] = [q.partial_sum for q in rows]
        deficits = [1.0 - q.partial_sum for q in rows]
        worst_deficit = max(worst_deficit, max(deficits))
        min_deficit = min(min_deficit, min(deficits))
    dt = _elapsed(t0)
    first = next(iter(sums.values()))
    identical = all(v == first for v in sums.values())
    ok = ok and identical and 0.0 <= min_deficit and worst_deficit <= 2.1e-4 and dt < 10.0
    record(
        4,
        ok,
        f"deficits in [{min_deficit:.3e}, {worst_deficit:.3e}] (within [0, 2.1e-4]), "
        f"bit-identical across families: {identical}, {dt:.2f}s (< 10s)",
    )
    assert ok


def test_c05_summation_identity():
    x1 = [k / 100 for k in range(1, 100)]
    worst_ratio = 0.0
    for N in (100, 1000, 10_000):
        for x in x1:
            worst_ratio = max(worst_ratio, summation_identity_residual(x, N) * N / 3.0)
    ok = worst_ratio <= 1.0
    record(5, ok, f"max residual * N / 3 = {worst_ratio:.4f} (<= 1) over 99 xi_1 values and N in 1e2, 1e3, 1e4")
    assert ok


def test_c06_dimension_attainment():
    t0 = time.perf_counter()
    lines, ok = [], True
    for t in (0.25, 0.5, 0.75, 1.0):
        est = dens.banach_dimension(dimension_family(t), dens.DEFAULT_SCHEDULE)
        ESTIMATES[f"dimension t={t}"] = est.slope_fit
        ok &= abs(est.slope_fit - t) <= DIM_TOL
        lines.append(f"t={t}: {est.slope_fit:.4f}")
    exp = dens.banach_dimension(Exponential(2.0), dens.EXPONENTIAL_SCHEDULE)
    ESTIMATES["exponential a=2"] = exp.slope_fit
    ok &= exp.slope_fit <= 0.05
    dt = _elapsed(t0)
    ok &= dt < 30.0
    record(
        6,
        ok,
        f"slopes {', '.join(lines)} (|err| <= {DIM_TOL}); exponential a=2 to h=2^200: {exp.slope_fit:.4f} (<= 0.05); {dt:.1f}s",
    )
    assert ok


def test_c07_joint_attainment():
    t0 = time.perf_counter()
    cells = run_sweep()
    failed = [c for c in cells if not c.passed]
    for c in cells:
        ESTIMATES[f"sweep t={c.t} s={c.s}"] = c.dim_est
    # density-zero side: power-log at r = t on the default schedule
    fam = PowerLog(0.5)
    prof = dens.counting_profile(fam, dens.DEFAULT_SCHEDULE)
    ratios = [c / h**0.5 for h, c in zip(prof.h, prof.counts)]
    decreasing = all(b <= a for a, b in zip(ratios, ratios[1:]))
    bound = 2.0 / math.log(prof.h[-1]) ** 0.5 + 0.05
    dt = _elapsed(t0)
    ok = not failed and decreasing and ratios[-1] <= bound and dt < 300
    fails = "; ".join(f"t={c.t:g},s={c.s:g}: dim {c.dim_est:.4f}, density {c.density_est:.4f}" for c in failed)
    record(
        7,
        ok,
        f"sweep {len(cells) - len(failed)}/{len(cells)} cells within dim +-{DIM_TOL}, density +-{DENSITY_REL_TOL:.0%}"
        + (f" [failing: {fails}]" if failed else "")
        + f"; power-log t=0.5 ratio decreasing: {decreasing}, final {ratios[-1]:.4f} vs bound {bound:.4f}; {dt:.1f}s (< 300s)",
    )
    assert ok


def test_c08_level_sets():
    fams = [level_set_family(0.5, a) for a in (1.5, 2.0, 4.0, 8.0)]
    windows = [spectrum_window(f, 50) for f in fams]
    distinct = all(not np.array_equal(windows[i], windows[j]) for i in range(4) for j in range(i + 1, 4))
    verified = all(all(r.passed for r in verify_family(f)) for f in fams)
    dims = []
    for a, f in zip((1.5, 2.0, 4.0, 8.0), fams):
        d = dens.banach_dimension(f, dens.DEFAULT_SCHEDULE).slope_fit
        ESTIMATES[f"level set a={a}"] = d
        dims.append(d)
    in_band = all(0.47 <= d <= 0.53 for d in dims)
    ok = distinct and verified and in_band
    record(
        8,
        ok,
        f"distinct: {distinct}, all verify: {verified}, dimensions {', '.join(f'{d:.4f}' for d in dims)} (in [0.47, 0.53])",
    )
    assert ok


def test_c09_oracle_equivalence_and_centering():
    rng = np.random.default_rng(9)
    fams = BUILTINS
    mism = 0
    for i in range(1000):
        fam = fams[i % len(fams)]
        h = float(10 ** rng.uniform(0, 4))
        c = (0.0, 0.0) if i % 4 == 0 else tuple(rng.uniform(-h, h, size=2))
        if dens.count_in_ball(fam, c, h) != dens.brute_force_count(fam, c, h, n_cap=int(abs(c[0]) + h) + 2):
            mism += 1
    worst_excess = -math.inf
    radii = dens.DEFAULT_SCHEDULE.radii()
    for fam in fams:
        for k in range(100):
            h = float(radii[k % len(radii)])
            c = tuple(rng.uniform(-h, h, size=2))
            worst_excess = max(worst_excess, dens.count_in_ball(fam, c, h) - dens.count_in_ball(fam, (0, 0), h))
    ok = mism == 0 and worst_excess <= 2
    record(9, ok, f"{mism} mismatches in 10^3 instances; max count(x,h) - count(0,h) = {worst_excess} (<= 2)")
    assert ok


def test_c10_monte_carlo():
    t0 = time.perf_counter()
    points = [(0.5, 0.0), (0.25, 1.0), (0.9, -2.0)]
    exact = [fourier_closed_form(SYS, p) for p in points]
    per_seed_ok, empirical = [], []
    for seed in range(5):
        x = sample_measure(SYS, 10**6, seed)
        vals = [empirical_fourier(x, p) for p in points]
        empirical.append(vals)
        per_seed_ok.append(sum(abs(v - e) <= 0.005 for v, e in zip(vals, exact)) >= 2)
    median_dev = []
    for j, e in enumerate(exact):
        re = float(np.median([v[j].real for v in empirical]))
        im = float(np.median([v[j].imag for v in empirical]))
        median_dev.append(abs(complex(re, im) - e))
    dt = _elapsed(t0)
    ok = all(per_seed_ok) and all(d <= 0.005 for d in median_dev) and dt < 10.0
    record(
        10,
        ok,
        f"seeds with >= 2/3 points within 0.005: {sum(per_seed_ok)}/5; median deviations "
        f"{', '.join(f'{d:.2e}' for d in median_dev)}; {dt:.1f}s (< 10s)",
    )
    assert ok


def test_c11_upper_bound():
    bound = dens.dimension_upper_bound(SYS)
    if len(ESTIMATES) < 10:  # run in isolation: gather the criterion 6 and 8 estimates directly
        for t in (0.25, 0.5, 0.75, 1.0):
            ESTIMATES[f"dimension t={t}"] = dens.banach_dimension(dimension_family(t)).slope_fit
        for a in (1.5, 2.0, 4.0, 8.0):
            ESTIMATES[f"level set a={a}"] = dens.banach_dimension(level_set_family(0.5, a)).slope_fit
    top = max(ESTIMATES, key=ESTIMATES.get)
    ok = bound == 1.0 and ESTIMATES[top] <= 1.03
    record(
        11,
        ok,
        f"dimension_upper_bound = {bound!r} (== 1); largest of {len(ESTIMATES)} estimates {ESTIMATES[top]:.6f} ({top}) <= 1.03",
    )
    assert ok


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))

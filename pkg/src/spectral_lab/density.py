"""Counting spectrum points in open balls, and Beurling density / dimension estimates.

Exact counts for the built-in families avoid enumerating the whole strip
``|n - x1| < h``.  On ``n >= 0`` every built-in beta is nondecreasing and
(except the exponential family) convex as a sequence, so the squared
distance ``f(n) = (n - x1)^2 + (beta(n) - x2)^2`` splits into

* a convex piece where ``beta(n) >= x2``, whose sublevel set is an interval
  found by locating the minimiser and two binary searches;
* a nonincreasing piece where ``n <= x1`` and ``beta(n) < x2`` (one binary search);
* a mixed band ``x1 < n`` with ``beta(n) < x2`` that is enumerated.  Its
  length is at most ``beta^{-1}(x2)``, small for centres near the origin.

Negative ``n`` reduce to positive ones by the odd symmetry of beta
(reflect the centre through the origin).  Affine families are convex on all
of Z.  The exponential family has only ``O(log h)`` candidates and is
enumerated outright.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateProfileError, OracleIncompleteError, RepresentabilityError, UnsupportedSystemError
from .measure import SelfAffineSystem
from .report import fmt
from .spectra import BetaFamily, Exponential

_CHUNK = 1 << 20
_BIG = 2.0**1023
_INT_LIMIT = 2**53


def _inside(dx, dy, h: float):
    """Open-ball test ``dx^2 + dy^2 < h^2``, falling back to hypot on overflow."""
    dx = np.asarray(dx, dtype=float)
    dy = np.asarray(dy, dtype=float)
    with np.errstate(over="ignore", invalid="ignore"):
        d2 = dx * dx + dy * dy
        h2 = h * h
    if math.isfinite(h2):
        exact = d2 < h2
        if np.all(np.isfinite(d2)):
            return exact
        return np.where(np.isfinite(d2), exact, np.hypot(dx, dy) < h)
    return np.hypot(dx, dy) < h


class _Side:
    """Distances from a centre to ``(m, beta(m))`` for integers ``m >= 0``."""

    def __init__(self, family: BetaFamily, x1: float, x2: float, h: float):
        self.family = family
        self.x1, self.x2, self.h = x1, x2, h

    def beta(self, m: int) -> float:
        return float(self.family.values(np.array([m], dtype=np.int64))[0])

    def dist(self, m: int) -> float:
        return math.hypot(m - self.x1, self.beta(m) - self.x2)

    def inside(self, m: int) -> bool:
        return bool(_inside(m - self.x1, self.beta(m) - self.x2, self.h))

    def count_range(self, lo: int, hi: int) -> int:
        total = 0
        for start in range(lo, hi + 1, _CHUNK):
            m = np.arange(start, min(hi, start + _CHUNK - 1) + 1, dtype=np.int64)
            b = self.family.values(m)
            total += int(np.count_nonzero(_inside(m - self.x1, b - self.x2, self.h)))
        return total


def _first_true(pred, lo: int, hi: int) -> int:
    """Smallest m in [lo, hi] with pred(m), for pred monotone False->True; hi+1 if none."""
    if lo > hi or not pred(hi):
        return hi + 1
    while lo < hi:
        mid = (lo + hi) // 2
        if pred(mid):
            hi = mid
        else:
            lo = mid + 1
    return lo


def _count_convex(side: _Side, lo: int, hi: int) -> int:
    if lo > hi:
        return 0
    m0 = _first_true(lambda m: side.dist(m + 1) >= side.dist(m), lo, hi - 1)
    m0 = min(m0, hi)
    if not side.inside(m0):
        return 0
    left = _first_true(side.inside, lo, m0)
    right = _first_true(lambda m: not side.inside(m), m0, hi) - 1
    return right - left + 1


def _beta_reach(side: _Side, target: float, lo: int, hi: int) -> int:
    """Some m <= hi with beta(m) >= target, by doubling from lo; hi if none is found first."""
    m = max(lo, 1)
    while m < hi and side.beta(m) < target:
        if m > _INT_LIMIT:
            raise RepresentabilityError("ball reaches beyond 2^53 along the spectrum")
        m *= 2
    return min(m, hi)


def _count_side(family: BetaFamily, x1: float, x2: float, h: float, start: int) -> int:
    """Count m >= start with (m, beta(m)) in the open ball B((x1, x2), h)."""
    lo = max(start, math.floor(x1 - h))
    hi = math.floor(x1 + h)
    if lo > hi:
        return 0
    side = _Side(family, x1, x2, h)
    if not family.affine:
        # beyond this index beta(m) - x2 >= h
        hi = _beta_reach(side, x2 + h, lo, hi)
    if hi - lo > _INT_LIMIT:
        raise RepresentabilityError("ball reaches beyond 2^53 along the spectrum")
    if family.affine:
        return _count_convex(side, lo, hi)
    q = lo if x2 <= 0 else _first_true(lambda m: side.beta(m) >= x2, lo, hi)
    total = _count_convex(side, q, hi)
    if q > lo:
        # beta < x2 on [lo, q-1]
        split = min(q - 1, math.floor(x1))
        if split >= lo:
            first = _first_true(side.inside, lo, split)
            total += split - first + 1
        total += side.count_range(max(lo, split + 1), q - 1)
    return total


def _count_exponential(family: Exponential, x1: float, x2: float, h: float) -> int:
    reach = h + abs(x2)
    if reach >= _BIG:
        raise RepresentabilityError("exponential counting supports h + |x2| < 2^1023")
    # |n| beyond K has |beta| = a^|n| > reach; n = 0 is always a candidate
    K = min(family.n_max, max(0, math.floor(math.log(reach) / math.log(family.a)) + 1))
    lo = max(-K, math.floor(x1 - h))
    hi = min(K, math.floor(x1 + h))
    if lo > hi:
        return 0
    n = np.arange(lo, hi + 1, dtype=np.int64)
    return int(np.count_nonzero(_inside(n - x1, family.values(n) - x2, h)))


def count_in_ball(family: BetaFamily, center=(0.0, 0.0), h: float = 1.0) -> int:
    """Exact ``#(Lambda_beta intersect B(center, h))`` for the open ball."""
    if not h > 0:
        raise ValueError("h must be positive")
    x1, x2 = (float(c) for c in center)
    if not family.builtin:
        lo, hi = math.floor(x1 - h), math.floor(x1 + h)
        total = 0
        for start in range(lo, hi + 1, _CHUNK):
            n = np.arange(start, min(hi, start + _CHUNK - 1) + 1, dtype=np.int64)
            total += int(np.count_nonzero(_inside(n - x1, family.values(n) - x2, h)))
        return total
    if isinstance(family, Exponential):
        return _count_exponential(family, x1, x2, h)
    return _count_side(family, x1, x2, h, 0) + _count_side(family, -x1, -x2, h, 1)


def brute_force_count(family: BetaFamily, center=(0.0, 0.0), h: float = 1.0, n_cap: int = 1000) -> int:
    """Definition-level count by enumerating ``|n| <= n_cap``.

    Raises :class:`OracleIncompleteError` unless every ``|n| > n_cap`` is
    provably outside the ball: either ``n_cap + 1 - |x1| >= h``, or (for
    built-in families, where ``|beta|`` is monotone) ``|beta(n_cap + 1)| - |x2| >= h``.
    """
    x1, x2 = float(center[0]), float(center[1])
    covered = n_cap + 1 - abs(x1) >= h
    cap = n_cap
    if isinstance(family, Exponential) and n_cap > family.n_max:
        if h + abs(x2) >= _BIG:
            raise OracleIncompleteError("cannot certify points beyond the representable range")
        cap = family.n_max
        covered = True
    if not covered and family.builtin:
        covered = abs(family(n_cap + 1)) - abs(x2) >= h
    if not covered:
        raise OracleIncompleteError(f"n_cap={n_cap} does not cover the ball of radius {h}")
    n = np.arange(-cap, cap + 1, dtype=np.int64)
    beta = family.values(n)
    count = 0
    for k, b in zip(n.tolist(), beta.tolist()):
        dx, dy = k - x1, b - x2
        if abs(dx) >= h or abs(dy) >= h:
            continue
        if dx * dx + dy * dy < h * h:
            count += 1
    return count


# Radius schedules and profiles


def _top_slice(steps: int, fraction: float) -> slice:
    if not 0 < fraction <= 1:
        raise ValueError("window fraction must lie in (0, 1]")
    keep = max(1, math.ceil(fraction * steps))
    return slice(steps - keep, steps)


@dataclass(frozen=True)
class RadiusSchedule:
    """Geometric radii ``h_k = h_min * ratio**k`` for k = 0..steps-1."""

    h_min: float = 100.0
    ratio: float = 2.0
    steps: int = 20

    def __post_init__(self):
        if not self.h_min > 1:
            raise ValueError("h_min must exceed 1")
        if not self.ratio > 1:
            raise ValueError("ratio must exceed 1")
        if self.steps < 1:
            raise ValueError("steps must be positive")
        if not math.isfinite(self.log_h_max) or self.log_h_max >= 1023 * math.log(2):
            raise RepresentabilityError("h_max is not representable")

    @property
    def log_h_max(self) -> float:
        return math.log(self.h_min) + (self.steps - 1) * math.log(self.ratio)

    def radii(self) -> np.ndarray:
        return self.h_min * self.ratio ** np.arange(self.steps, dtype=float)

    def top(self, fraction: float) -> slice:
        """Slice selecting the largest ``fraction`` of the radii (at least one)."""
        return _top_slice(self.steps, fraction)

    @classmethod
    def spanning(cls, h_min: float, h_max: float, steps: int) -> "RadiusSchedule":
        return cls(h_min, (h_max / h_min) ** (1.0 / (steps - 1)), steps)


DEFAULT_SCHEDULE = RadiusSchedule()
# N(h) ~ 2 log_a h only flattens at very large h
EXPONENTIAL_SCHEDULE = RadiusSchedule(2.0, 2.0, 200)
WINDOW_FRACTION = 0.5
BISECTION_STEPS = 20
BISECTION_THRESHOLD = 1.0


def default_schedule(family: BetaFamily) -> RadiusSchedule:
    return EXPONENTIAL_SCHEDULE if isinstance(family, Exponential) else DEFAULT_SCHEDULE


@dataclass(frozen=True)
class CenterPolicy:
    """Which centres the sup over ``x`` inspects at each radius.

    ``origin`` is exact for the built-in families (points thin out away from
    the origin).  ``random`` draws ``m`` centres uniformly from the square of
    half-width ``spread * h`` about the origin; ``lattice`` uses a ``k x k``
    grid on the same square.  The origin is always included.
    """

    kind: str = "origin"
    m: int = 100
    seed: int = 0
    spread: float = 0.5
    k: int = 5

    def __post_init__(self):
        if self.kind not in ("origin", "random", "lattice"):
            raise ValueError(f"unknown centre policy {self.kind!r}")

    def centers(self, radii: np.ndarray) -> list[np.ndarray]:
        origin = np.zeros((1, 2))
        if self.kind == "origin":
            return [origin for _ in radii]
        if self.kind == "lattice":
            g = np.linspace(-1.0, 1.0, self.k)
            unit = np.array([(a, b) for a in g for b in g])
            return [np.vstack([origin, self.spread * h * unit]) for h in radii]
        rng = np.random.default_rng(self.seed)
        return [
            np.vstack([origin, rng.uniform(-self.spread * h, self.spread * h, size=(self.m, 2))])
            for h in radii
        ]


ORIGIN = CenterPolicy()


@dataclass(frozen=True)
class CountingProfile:
    h: tuple[float, ...]
    counts: tuple[int, ...]
    center: tuple[float, float] = (0.0, 0.0)

    def __post_init__(self):
        if len(self.h) != len(self.counts):
            raise ValueError("h and counts differ in length")

    def log_points(self) -> tuple[np.ndarray, np.ndarray]:
        if any(c <= 0 for c in self.counts):
            raise DegenerateProfileError("zero count in profile")
        return np.log(np.asarray(self.h)), np.array([math.log(c) for c in self.counts])

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["h", "count", "center_x1", "center_x2"])
        for h, c in zip(self.h, self.counts):
            w.writerow([fmt(h), c, fmt(self.center[0]), fmt(self.center[1])])
        return buf.getvalue()


def counting_profile(family: BetaFamily, sched: RadiusSchedule | None = None, center=(0.0, 0.0)) -> CountingProfile:
    sched = sched or default_schedule(family)
    radii = sched.radii()
    counts = tuple(count_in_ball(family, center, float(h)) for h in radii)
    return CountingProfile(tuple(float(h) for h in radii), counts, (float(center[0]), float(center[1])))


def sup_profile(family: BetaFamily, sched: RadiusSchedule, centers: CenterPolicy = ORIGIN) -> CountingProfile:
    """Profile of ``max_x #(Lambda cap B(x, h))`` over the policy's centres."""
    if centers.kind == "origin":
        if not family.builtin:
            raise ValueError("origin-only centre search is not justified for a custom beta")
        return counting_profile(family, sched)
    radii = sched.radii()
    counts = []
    for h, cs in zip(radii, centers.centers(radii)):
        counts.append(max(count_in_ball(family, c, float(h)) for c in cs))
    return CountingProfile(tuple(float(h) for h in radii), tuple(counts))


# Estimates


@dataclass(frozen=True)
class DensityEstimate:
    r: float
    value: float
    window_fraction: float
    trace: tuple[float, ...] = field(default=(), repr=False)

    def csv_row(self) -> list[str]:
        return [fmt(self.r), fmt(self.value), fmt(self.window_fraction)]


DENSITY_HEADER = ["r", "value", "window_fraction"]


@dataclass(frozen=True)
class DimensionEstimate:
    slope_fit: float
    bisection: float
    agreement: float

    def csv_row(self) -> list[str]:
        return [fmt(self.slope_fit), fmt(self.bisection), fmt(self.agreement)]


DIMENSION_HEADER = ["slope_fit", "bisection", "agreement"]


def _ratios(profile: CountingProfile, r: float) -> np.ndarray:
    """``count / h^r`` computed in logs so that huge radii are safe."""
    log_h = np.log(np.asarray(profile.h))
    log_c = np.array([math.log(c) if c > 0 else -math.inf for c in profile.counts])
    return np.exp(log_c - r * log_h)


def density_from_profile(profile: CountingProfile, r: float, window_fraction: float = WINDOW_FRACTION) -> DensityEstimate:
    if r < 0:
        raise ValueError("r must be non-negative")
    ratios = _ratios(profile, r)
    sl = _top_slice(len(ratios), window_fraction)
    return DensityEstimate(r, float(ratios[sl].max()), window_fraction, tuple(float(v) for v in ratios))


def upper_beurling_density(
    family: BetaFamily,
    r: float,
    sched: RadiusSchedule | None = None,
    centers: CenterPolicy = ORIGIN,
    window_fraction: float = WINDOW_FRACTION,
) -> DensityEstimate:
    """limsup proxy of ``sup_x #(Lambda cap B(x,h)) / h^r``: the maximum over the top of the schedule."""
    sched = sched or default_schedule(family)
    return density_from_profile(sup_profile(family, sched, centers), r, window_fraction)


def banach_density(
    family: BetaFamily,
    r: float,
    sched: RadiusSchedule | None = None,
    window_fraction: float = WINDOW_FRACTION,
) -> DensityEstimate:
    """Origin-centred version of :func:`upper_beurling_density`."""
    sched = sched or default_schedule(family)
    return density_from_profile(counting_profile(family, sched), r, window_fraction)


def dimension_from_profile(profile: CountingProfile, window_fraction: float = WINDOW_FRACTION) -> DimensionEstimate:
    steps = len(profile.h)
    if steps < 8:
        raise ValueError("dimension estimates need a schedule of at least 8 radii")
    sl = _top_slice(steps, window_fraction)
    sub = CountingProfile(profile.h[sl], profile.counts[sl], profile.center)
    x, y = sub.log_points()
    xc = x - x.mean()
    slope = float(np.sum(xc * (y - y.mean())) / np.sum(xc * xc))

    def density(r):
        return float(np.exp(y - r * x).max())

    lo, hi = 0.0, 2.0
    for _ in range(BISECTION_STEPS):
        mid = 0.5 * (lo + hi)
        if density(mid) > BISECTION_THRESHOLD:
            lo = mid
        else:
            hi = mid
    bis = 0.5 * (lo + hi)
    return DimensionEstimate(slope, bis, abs(slope - bis))


def beurling_dimension(
    family: BetaFamily,
    sched: RadiusSchedule | None = None,
    centers: CenterPolicy = ORIGIN,
) -> DimensionEstimate:
    """Critical exponent of ``sup_x`` counts, by log-log slope and by bisection on the density."""
    sched = sched or default_schedule(family)
    if sched.steps < 8:
        raise ValueError("dimension estimates need a schedule of at least 8 radii")
    return dimension_from_profile(sup_profile(family, sched, centers))


def banach_dimension(family: BetaFamily, sched: RadiusSchedule | None = None) -> DimensionEstimate:
    sched = sched or default_schedule(family)
    if sched.steps < 8:
        raise ValueError("dimension estimates need a schedule of at least 8 radii")
    return dimension_from_profile(counting_profile(family, sched))


def pseudo_dimension_formula(n_digits: int, lambda_min: float) -> float:
    """``ln #B / ln lambda_min``; a bare formula with no spectral claim attached."""
    return math.log(n_digits) / math.log(lambda_min)


def dimension_upper_bound(sys: SelfAffineSystem) -> float:
    """Upper bound on the Beurling dimension of any orthogonal set of mu_{R,B}."""
    if not sys.is_default:
        raise UnsupportedSystemError("the dimension bound is only established for the default system")
    lam = min(abs(e) for e in sys.eigenvalues)
    return pseudo_dimension_formula(len(sys.B), lam)

"""Beta families and the spectra ``{(n, beta(n)) : n in Z}`` they induce.

Every built-in family is odd, vanishes at 0 and has ``|beta|`` nondecreasing
on the positive integers; the counting code in :mod:`spectral_lab.density`
relies on this.  Values are computed on ``|n|`` and the sign applied last, so
odd symmetry holds bit for bit.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import Callable, ClassVar, Iterable

import numpy as np

from .errors import MalformedSpectrumError, RepresentabilityError
from .measure import DEFAULT_SYSTEM, SelfAffineSystem, fourier_closed_form
from .report import VerificationReport

_LOG2_MAX = 1023 * math.log(2.0)


class BetaFamily:
    """Base class.  Subclasses implement ``_magnitude`` on ``|n| >= 1``."""

    tag: ClassVar[str] = ""
    #: beta is affine on Z, which makes every ball section an interval
    affine: ClassVar[bool] = False
    #: beta restricted to n >= 0 is a convex sequence
    convex_on_positive: ClassVar[bool] = True
    builtin: ClassVar[bool] = True

    def _magnitude(self, m: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    @property
    def n_max(self) -> int | None:
        """Largest ``|n|`` with a representable value, ``None`` if unbounded."""
        return None

    def values(self, n) -> np.ndarray:
        """Vectorised beta over an integer array."""
        n = np.asarray(n)
        if n.dtype.kind not in "iu":
            raise TypeError("beta is defined on integers only")
        m = np.abs(n)
        if self.n_max is not None and m.size and int(m.max()) > self.n_max:
            raise RepresentabilityError(
                f"{self.describe()}: |n| <= {self.n_max} required, got {int(m.max())}"
            )
        out = np.zeros(n.shape, dtype=float)
        pos = m >= 1
        if np.any(pos):
            with np.errstate(over="ignore"):
                out[pos] = self._magnitude(m[pos].astype(float))
        if not np.all(np.isfinite(out)):
            raise RepresentabilityError(f"{self.describe()}: beta overflows on this window")
        return np.sign(n) * out + 0.0  # + 0.0 turns -0.0 into 0.0

    def __call__(self, n: int) -> float:
        return float(self.values(np.array([int(n)]))[0])

    def describe(self) -> str:
        params = ",".join(f"{k}={v}" for k, v in self.params().items())
        return f"{self.tag}({params})" if params else self.tag

    def params(self) -> dict[str, float]:
        return {}


@dataclass(frozen=True)
class Zero(BetaFamily):
    tag: ClassVar[str] = "zero"
    affine: ClassVar[bool] = True

    def _magnitude(self, m):
        return np.zeros_like(m)


@dataclass(frozen=True)
class Linear(BetaFamily):
    tag: ClassVar[str] = "linear"
    affine: ClassVar[bool] = True

    def _magnitude(self, m):
        return m


def _check_t(t: float, *, closed_right: bool) -> None:
    ok = 0 < t <= 1 if closed_right else 0 < t < 1
    if not ok:
        interval = "(0, 1]" if closed_right else "(0, 1)"
        raise ValueError(f"t must lie in {interval}, got {t}")


def _check_a(a: float) -> None:
    if not a > 1:
        raise ValueError(f"a must be > 1, got {a}")


@dataclass(frozen=True)
class PowerLaw(BetaFamily):
    """``sgn(n) |n|^(1/t)`` for ``0 < t < 1``."""

    t: float
    tag: ClassVar[str] = "power-law"

    def __post_init__(self):
        _check_t(self.t, closed_right=False)

    def _magnitude(self, m):
        return np.power(m, 1.0 / self.t)

    def params(self):
        return {"t": self.t}


@dataclass(frozen=True)
class PowerLawScaled(BetaFamily):
    """``sgn(n) |a n|^(1/t)``; distinct spectra with the same dimension."""

    t: float
    a: float

    tag: ClassVar[str] = "power-law-scaled"

    def __post_init__(self):
        _check_t(self.t, closed_right=True)
        _check_a(self.a)

    @property
    def affine(self):
        return self.t == 1

    def _magnitude(self, m):
        return np.power(self.a * m, 1.0 / self.t)

    def params(self):
        return {"t": self.t, "a": self.a}


@dataclass(frozen=True)
class Exponential(BetaFamily):
    """``sgn(n) a^|n|``, the dimension-zero construction."""

    a: float
    tag: ClassVar[str] = "exponential"
    convex_on_positive: ClassVar[bool] = False

    def __post_init__(self):
        _check_a(self.a)

    @property
    def n_max(self) -> int:
        return math.floor(_LOG2_MAX / math.log(self.a))

    def _magnitude(self, m):
        return np.power(self.a, m)

    def params(self):
        return {"a": self.a}


@dataclass(frozen=True)
class PowerLog(BetaFamily):
    """``sgn(n) |n|^(1/t) ln|n|``; zero density at exponent t."""

    t: float
    tag: ClassVar[str] = "power-log"

    def __post_init__(self):
        _check_t(self.t, closed_right=True)

    def _magnitude(self, m):
        return np.power(m, 1.0 / self.t) * np.log(m)

    def params(self):
        return {"t": self.t}


@dataclass(frozen=True)
class DensityCalibrated(BetaFamily):
    """``sgn(n) (2|n|/s)^(1/t)``; dimension t with t-density s."""

    t: float
    s: float
    tag: ClassVar[str] = "density-calibrated"

    def __post_init__(self):
        _check_t(self.t, closed_right=True)
        if not self.s > 0:
            raise ValueError(f"s must be > 0, got {self.s}")

    @property
    def affine(self):
        return self.t == 1

    def _magnitude(self, m):
        return np.power(2.0 * m / self.s, 1.0 / self.t)

    def params(self):
        return {"t": self.t, "s": self.s}


@dataclass(frozen=True)
class Custom(BetaFamily):
    """User-supplied ``beta``; must be total on the window and vanish at 0."""

    func: Callable[[int], float] = field(compare=False)
    name: str = "custom"
    tag: ClassVar[str] = "custom"
    builtin: ClassVar[bool] = False
    convex_on_positive: ClassVar[bool] = False

    def values(self, n) -> np.ndarray:
        n = np.asarray(n)
        if n.dtype.kind not in "iu":
            raise TypeError("beta is defined on integers only")
        out = np.empty(n.shape, dtype=float)
        flat = out.reshape(-1)
        for i, k in enumerate(n.reshape(-1).tolist()):
            try:
                v = float(self.func(k))
            except Exception as exc:
                raise MalformedSpectrumError(f"{self.name}: beta({k}) failed: {exc}") from exc
            if not math.isfinite(v):
                raise MalformedSpectrumError(f"{self.name}: beta({k}) = {v} is not finite")
            if k == 0 and v != 0:
                raise MalformedSpectrumError(f"{self.name}: beta(0) must be 0, got {v}")
            flat[i] = v
        return out

    def describe(self) -> str:
        return f"custom({self.name})"


def table_family(n_values: Iterable[int], betas: Iterable[float], name: str = "table") -> Custom:
    """Custom family backed by a finite table, e.g. a spectrum file."""
    table: dict[int, float] = {}
    for n, b in zip(n_values, betas):
        if n in table:
            raise MalformedSpectrumError(f"{name}: n={n} appears twice")
        table[n] = b
    return Custom(func=table.__getitem__, name=name)


# Constructions attaining prescribed dimension / density.

def dimension_family(t: float) -> BetaFamily:
    """Spectrum of Beurling dimension ``t`` for ``t`` in [0, 1]."""
    if t == 0:
        return Exponential(2.0)
    if t == 1:
        return Linear()
    return PowerLaw(t)


def level_set_family(t: float, a: float) -> BetaFamily:
    """One member of the continuum of spectra with dimension ``t``, indexed by ``a > 1``."""
    if t == 0:
        return Exponential(a)
    return PowerLawScaled(t, a)


def density_family(t: float, s: float) -> BetaFamily:
    """Spectrum with dimension ``t`` in (0, 1] and t-Beurling density ``s`` >= 0."""
    _check_t(t, closed_right=True)
    if s == 0:
        return PowerLog(t)
    return DensityCalibrated(t, s)


def beta_eval(family: BetaFamily, n: int) -> float:
    return family(n)


def spectrum_window(family: BetaFamily, N: int) -> np.ndarray:
    """Points ``(n, beta(n))`` for ``|n| <= N`` in increasing n, shape ``(2N+1, 2)``."""
    if N < 0:
        raise ValueError("N must be non-negative")
    n = np.arange(-N, N + 1, dtype=np.int64)
    return np.column_stack([n.astype(float), family.values(n)])


@dataclass(frozen=True)
class Spectrum:
    """``Lambda_beta`` over all of Z, or over ``{-N..N}`` when ``half_width`` is set."""

    family: BetaFamily
    half_width: int | None = None

    def points(self, N: int | None = None) -> np.ndarray:
        N = self.half_width if N is None else N
        if N is None:
            raise ValueError("an infinite spectrum needs an explicit window")
        return spectrum_window(self.family, N)

    def __contains__(self, point) -> bool:
        x1, x2 = point
        if x1 != int(x1):
            return False
        if self.half_width is not None and abs(int(x1)) > self.half_width:
            return False
        return self.family(int(x1)) == x2


def _integer_first_coordinates(points) -> np.ndarray:
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    x1 = pts[:, 0]
    bad = ~np.isfinite(x1) | (x1 != np.round(x1))
    if np.any(bad):
        raise MalformedSpectrumError(
            f"first coordinates must be integers; offending value {x1[bad][0]!r}"
        )
    return x1.astype(np.int64)


def check_orthogonal_combinatorial(points) -> VerificationReport:
    """Orthogonality via distinct integer first coordinates.

    Differences of such points lie in the zero set of the Fourier transform,
    and conversely any repeated first coordinate leaves a difference with
    vanishing first coordinate, where the transform equals 1.
    """
    n = _integer_first_coordinates(points)
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    order = np.argsort(n, kind="stable")
    dup = np.flatnonzero(np.diff(n[order]) == 0)
    failures = []
    for i in dup:
        j, k = order[i], order[i + 1]
        failures.append(
            f"collision: ({pts[j, 0]:g}, {pts[j, 1]:.17g}) and ({pts[k, 0]:g}, {pts[k, 1]:.17g})"
        )
    return VerificationReport(
        check="orthogonality-combinatorial",
        passed=not failures,
        worst_deviation=float(len(failures)),
        tolerance=0.0,
        n_items=len(n),
        failures=failures,
    )


def gram_matrix(sys: SelfAffineSystem, points) -> np.ndarray:
    """``G[j, k] = mu_hat(points[k] - points[j])``."""
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    diff = pts[None, :, :] - pts[:, None, :]
    return np.asarray(fourier_closed_form(sys, diff), dtype=complex).reshape(len(pts), len(pts))


def check_orthogonal_gram(points, sys: SelfAffineSystem = DEFAULT_SYSTEM, tol: float = 1e-12) -> VerificationReport:
    G = gram_matrix(sys, points)
    off = G - np.diag(np.diag(G))
    worst_off = float(np.abs(off).max()) if len(G) > 1 else 0.0
    worst_diag = float(np.abs(np.diag(G) - 1).max())
    worst = max(worst_off, worst_diag)
    failures = []
    if worst_off > tol:
        j, k = np.unravel_index(np.argmax(np.abs(off)), off.shape)
        failures.append(f"|G[{j},{k}]| = {abs(off[j, k]):.3e} exceeds {tol:g}")
    if worst_diag > tol:
        failures.append(f"diagonal deviates from 1 by {worst_diag:.3e}")
    return VerificationReport(
        check="orthogonality-gram",
        passed=not failures,
        worst_deviation=worst,
        tolerance=tol,
        n_items=len(G),
        failures=failures,
    )


# CSV interchange: header ``n,beta``.

def write_spectrum_csv(points, stream=None) -> str:
    buf = io.StringIO() if stream is None else stream
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "beta"])
    n = _integer_first_coordinates(points)
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    for k, b in zip(n.tolist(), pts[:, 1].tolist()):
        w.writerow([k, f"{b:.17g}"])
    return buf.getvalue() if stream is None else ""


def read_spectrum_csv(text: str) -> np.ndarray:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or [c.strip() for c in rows[0]] != ["n", "beta"]:
        raise MalformedSpectrumError("spectrum CSV must start with header 'n,beta'")
    pts = []
    for lineno, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        try:
            n = int(row[0])
            b = float(row[1])
        except (ValueError, IndexError) as exc:
            raise MalformedSpectrumError(f"line {lineno}: {row!r}") from exc
        pts.append((n, b))
    return np.array(pts, dtype=float).reshape(-1, 2)

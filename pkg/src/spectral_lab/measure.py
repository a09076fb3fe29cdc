"""The planar self-affine measure generated by an expanding matrix and a digit set.

Frequencies and points are plain arrays whose last axis has length 2; every
function here broadcasts over leading axes.  Complex values are returned as
Python ``complex`` for a single input and as ``complex128`` arrays otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import RepresentabilityError, UnsupportedSystemError

DEFAULT_R = ((2, 1), (0, 2))
DEFAULT_B = ((0, 0), (1, 0))

ZERO_SET_TOL = 1e-9
MAX_TRANSPOSE_POWER = 62
BURN_IN = 64
_TABLE_SIZE = 4096
BOUNDING_BOX = ((0.0, 1.0), (-1.0, 1.0))


@dataclass(frozen=True)
class SelfAffineSystem:
    """Expanding integer matrix ``R`` and digit set ``B`` defining mu_{R,B}."""

    R: tuple[tuple[int, int], tuple[int, int]] = DEFAULT_R
    B: tuple[tuple[int, int], ...] = DEFAULT_B
    _eig: tuple[complex, complex] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        R = tuple(tuple(int(v) for v in row) for row in self.R)
        B = tuple(tuple(int(v) for v in b) for b in self.B)
        if len(R) != 2 or any(len(row) != 2 for row in R):
            raise ValueError("R must be a 2x2 integer matrix")
        if not B or any(len(b) != 2 for b in B):
            raise ValueError("B must be a non-empty list of 2-vectors")
        if len(set(B)) != len(B):
            raise ValueError("digit set B has repeated elements")
        if (0, 0) not in B:
            raise ValueError("digit set B must contain the origin")
        if R[0][1] == 0 or R[1][0] == 0:
            eig = np.array([R[0][0], R[1][1]], dtype=complex)
        else:
            eig = np.linalg.eigvals(np.array(R, dtype=float))
        if np.any(np.abs(eig) <= 1.0):
            raise ValueError(f"R is not expanding: eigenvalues {eig}")
        object.__setattr__(self, "R", R)
        object.__setattr__(self, "B", B)
        object.__setattr__(self, "_eig", tuple(complex(e) for e in eig))

    @property
    def is_default(self) -> bool:
        return self.R == DEFAULT_R and set(self.B) == set(DEFAULT_B)

    @property
    def eigenvalues(self) -> tuple[complex, complex]:
        return self._eig

    @property
    def det(self) -> int:
        (a, b), (c, d) = self.R
        return a * d - b * c

    @property
    def digits(self) -> np.ndarray:
        return np.array(self.B, dtype=float)

    def require_default(self, what: str) -> None:
        if not self.is_default:
            raise UnsupportedSystemError(
                f"{what} is only available for R={DEFAULT_R}, B={DEFAULT_B}"
            )


DEFAULT_SYSTEM = SelfAffineSystem()


def _as_points(x) -> tuple[np.ndarray, bool]:
    arr = np.asarray(x, dtype=float)
    if arr.shape[-1:] != (2,):
        raise ValueError(f"expected points with trailing dimension 2, got shape {arr.shape}")
    return arr, arr.ndim == 1


def _scalar_or_array(values: np.ndarray, single: bool):
    return complex(values) if single else values


def mask_mB(sys: SelfAffineSystem, x):
    """Normalised exponential sum ``(1/#B) sum_b exp(-2 pi i <b, x>)``."""
    pts, single = _as_points(x)
    phases = pts @ sys.digits.T
    vals = np.exp(-2j * np.pi * phases).mean(axis=-1)
    return _scalar_or_array(vals, single)


def transpose_power(sys: SelfAffineSystem, k: int) -> np.ndarray:
    """Exact ``(R^t)^k`` as an object array of Python ints.

    Powers beyond 62 are refused; they are never needed at the default
    tolerances and the default system's entries would leave 64-bit range.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if k > MAX_TRANSPOSE_POWER:
        raise RepresentabilityError(f"transpose_power supports k <= {MAX_TRANSPOSE_POWER}, got {k}")
    rt = np.array(sys.R, dtype=object).T
    out = rt.copy()
    for _ in range(k - 1):
        out = out.dot(rt)
    return out


def _inverse_transpose_powers(sys: SelfAffineSystem, kmax: int) -> np.ndarray:
    """Float ``(R^t)^{-k}`` for k = 1..kmax, from exact adjugates."""
    det = sys.det
    mats = np.empty((kmax, 2, 2))
    rt = np.array(sys.R, dtype=object).T
    p = np.array([[1, 0], [0, 1]], dtype=object)
    for k in range(1, kmax + 1):
        p = p.dot(rt)
        (a, b), (c, d) = p
        adj = np.array([[d, -b], [-c, a]], dtype=object)
        scale = det**k
        mats[k - 1] = [[float(adj[i, j]) / scale for j in range(2)] for i in range(2)]
    return mats


def fourier_product(sys: SelfAffineSystem, xi, depth: int):
    """Truncated infinite product ``prod_{j<=depth} m_B((R^t)^{-j} xi)``."""
    if depth < 1:
        raise ValueError("depth must be at least 1")
    pts, single = _as_points(xi)
    inv_rt = np.linalg.inv(np.array(sys.R, dtype=float).T)
    y = pts.copy()
    acc = np.ones(pts.shape[:-1], dtype=complex)
    for _ in range(depth):
        y = y @ inv_rt.T
        acc = acc * mask_mB(sys, y)
    return _scalar_or_array(acc, single)


def fourier_closed_form(sys: SelfAffineSystem, xi):
    """``exp(-pi i xi_1) sin(pi xi_1) / (pi xi_1)``; ignores the second coordinate.

    Exact nonzero integers in the first coordinate give exactly 0.
    """
    sys.require_default("the closed-form Fourier transform")
    pts, single = _as_points(xi)
    x1 = pts[..., 0]
    vals = np.exp(-1j * np.pi * x1) * np.sinc(x1)
    vals = np.where((x1 != 0) & (x1 == np.round(x1)), 0j, vals)
    return _scalar_or_array(vals, single)


def in_zero_set(sys: SelfAffineSystem, xi, tol: float = ZERO_SET_TOL):
    """Membership in ``{xi : xi_1 in Z \\ {0}}`` with absolute tolerance on xi_1."""
    if tol < 0:
        raise ValueError("tol must be non-negative")
    sys.require_default("the explicit zero set")
    pts, single = _as_points(xi)
    x1 = pts[..., 0]
    nearest = np.round(x1)
    hit = (np.abs(x1 - nearest) <= tol) & (nearest != 0)
    return bool(hit) if single else hit


def zero_set_union_member(sys: SelfAffineSystem, xi, kmax: int, tol: float = ZERO_SET_TOL):
    """Brute-force test of ``xi in union_{k<=kmax} (R^t)^k Z(m_B)``.

    For the default digit set the zero set of m_B is the family of lines with
    first coordinate an odd half-integer; other digit sets fall back to
    ``|m_B| <= tol``.
    """
    if kmax < 1:
        raise ValueError("kmax must be at least 1")
    pts, single = _as_points(xi)
    mats = _inverse_transpose_powers(sys, kmax)
    # shape (kmax, ..., 2)
    ys = np.einsum("kij,...j->k...i", mats, pts)
    if set(sys.B) == set(DEFAULT_B):
        shifted = ys[..., 0] - 0.5
        hit = np.abs(shifted - np.round(shifted)) <= tol
    else:
        hit = np.abs(mask_mB(sys, ys.reshape(-1, 2))).reshape(ys.shape[:-1]) <= tol
    out = hit.any(axis=0)
    return bool(out) if single else out


def _block_table(inv_r: np.ndarray, digits: np.ndarray, length: int) -> np.ndarray:
    """``S[c] = sum_{i=1..length} R^{-i} b_{c_i}`` for every digit string ``c`` (base-#B index)."""
    table = np.zeros((1, 2))
    power = np.eye(2)
    for _ in range(length):
        power = power @ inv_r
        table = (table[:, None, :] + (digits @ power.T)[None, :, :]).reshape(-1, 2)
    return table


def sample_measure(sys: SelfAffineSystem, count: int, seed: int) -> np.ndarray:
    """Chaos-game samples of mu_{R,B}, shape ``(count, 2)``.

    Each of ``count`` independent walkers starts at the origin and applies
    ``x <- R^{-1}(x + b)`` for at least the fixed burn-in, digits drawn
    uniformly from B.  The result is ``sum_j R^{-j} b_j``; digit strings are
    drawn a block at a time and summed through a lookup table, which gives the
    same distribution as stepping one digit at a time at a fraction of the cost.
    """
    if count < 1:
        raise ValueError("count must be at least 1")
    rng = np.random.default_rng(seed)
    inv_r = np.linalg.inv(np.array(sys.R, dtype=float))
    digits = sys.digits.astype(float)
    n_digits = len(digits)
    length = max(1, min(BURN_IN, int(math.log(_TABLE_SIZE) // math.log(n_digits))))
    blocks = -(-BURN_IN // length)
    table = _block_table(inv_r, digits, length)
    t1, t2 = np.ascontiguousarray(table[:, 0]), np.ascontiguousarray(table[:, 1])
    shift = np.linalg.matrix_power(inv_r, length)
    idx_type = np.uint16 if len(table) <= 1 << 16 else np.int64
    x1 = np.zeros(count)
    x2 = np.zeros(count)
    scale = np.eye(2)
    for _ in range(blocks):
        c = rng.integers(0, len(table), size=count, dtype=idx_type)
        s1, s2 = t1.take(c), t2.take(c)
        (a, b), (cc, d) = scale
        x1 += a * s1 + b * s2
        x2 += cc * s1 + d * s2
        scale = scale @ shift
    return np.column_stack([x1, x2])


def empirical_fourier(samples: np.ndarray, xi) -> complex:
    """Sample mean of ``exp(-2 pi i <xi, x>)``, the Monte Carlo estimate of ``mu_hat(xi)``."""
    xi = np.asarray(xi, dtype=float)
    phase = samples[:, 0] * xi[0] + samples[:, 1] * xi[1]
    return complex(np.mean(np.exp(-2j * np.pi * phase)))

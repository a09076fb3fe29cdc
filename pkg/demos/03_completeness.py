"""Orthogonal is not enough: checking completeness through Q(xi) = 1."""

from spectral_lab import DEFAULT_SYSTEM, Exponential, Linear, Zero, spectrum_window
from spectral_lab.completeness import jp_points_check, jp_spectrum_check, q_lambda_truncated, q_points
from spectral_lab.completeness import summation_identity_residual

q = q_lambda_truncated(DEFAULT_SYSTEM, Linear(), (0.5, 0.3), 10_000)
print(f"Q(0.5, 0.3) over |n| <= 1e4: {q.partial_sum:.12f}, deficit {q.deficit:.3e} <= tail {q.tail_bound:.3e}")

# Q does not see beta: the linear and exponential spectra give the same sums bit for bit.
a, rows_a = jp_spectrum_check(DEFAULT_SYSTEM, Linear())
b, rows_b = jp_spectrum_check(DEFAULT_SYSTEM, Exponential(3.0))
print(a.summary())
print("identical partial sums:", [r.partial_sum for r in rows_a] == [r.partial_sum for r in rows_b])

# Drop every other point: still orthogonal, but Q halves.
evens = spectrum_window(Zero(), 500)[::2]
print("even subset Q(0.5, 0) =", q_points(DEFAULT_SYSTEM, evens, (0.5, 0)))
print(jp_points_check(DEFAULT_SYSTEM, evens).summary())

# The analytic identity behind Q = 1, with its O(1/N) truncation error.
for N in (100, 1000, 10_000):
    print(f"N={N}: residual of sum 1/(n+1/2)^2 = pi^2 is {summation_identity_residual(0.5, N):.3e}")

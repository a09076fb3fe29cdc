"""Beurling dimension of the spectra: any t in [0, 1] is attained."""

import numpy as np

from spectral_lab import banach_dimension, count_in_ball, dimension_family, level_set_family
from spectral_lab.density import DEFAULT_SCHEDULE, EXPONENTIAL_SCHEDULE, counting_profile

# Exact counts in balls around the origin grow like h^t.
fam = dimension_family(0.5)
for h in (10, 100, 1000, 10_000):
    print(f"h={h:>6}: #points = {count_in_ball(fam, (0, 0), h)}")

for t in (0.25, 0.5, 0.75, 1.0):
    est = banach_dimension(dimension_family(t))
    print(f"t={t}: slope {est.slope_fit:.4f}, bisection {est.bisection:.4f}")

# t = 0 needs exponential growth, and astronomically large radii before the count looks flat.
est = banach_dimension(dimension_family(0), EXPONENTIAL_SCHEDULE)
print(f"exponential: slope {est.slope_fit:.4f} on radii up to 2^{int(np.log2(EXPONENTIAL_SCHEDULE.radii()[-1]))}")

# Infinitely many spectra share each dimension.
for a in (1.5, 2, 4, 8):
    print(f"a={a}: beta(1) = {level_set_family(0.5, a)(1):g}, dimension {banach_dimension(level_set_family(0.5, a)).slope_fit:.4f}")

# log-log data for plotting
prof = counting_profile(fam, DEFAULT_SCHEDULE)
x, y = prof.log_points()
print(np.column_stack([x, y])[:3])

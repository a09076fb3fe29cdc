"""Prescribing dimension and density together, and where that breaks down."""

import math

from spectral_lab import DensityCalibrated, PowerLog, banach_density
from spectral_lab.density import RadiusSchedule
from spectral_lab.experiments import run_sweep, sweep_to_csv

sched = RadiusSchedule.spanning(100, 1e8, 20)
print("density-calibrated t=0.5 s=3:", banach_density(DensityCalibrated(0.5, 3), 0.5, sched).value)

# With s = 0 the ratio count / h^t drifts to zero, but only logarithmically.
est = banach_density(PowerLog(0.5), 0.5, sched)
print("power-log ratios:", [round(v, 3) for v in est.trace[::4]])
h = sched.radii()[-1]
print(f"at h={h:.0e}: 2/(log h)^t = {2 / math.log(h) ** 0.5:.3f}, 2/(t log h)^t = {2 / (0.5 * math.log(h)) ** 0.5:.3f}")

# A small sweep. At t = 1 the first coordinates already cap the count at 2h + 1,
# so s > 2 is out of reach for any spectrum and the calibrated family misses s.
cells = run_sweep(ts=(0.3, 0.7, 1.0), ss=(0.5, 2.0, 5.0))
print(sweep_to_csv(cells))

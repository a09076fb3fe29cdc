"""The measure behind everything: its Fourier transform and where it vanishes."""

import numpy as np

from spectral_lab import DEFAULT_SYSTEM as sys_
from spectral_lab import fourier_closed_form, fourier_product, in_zero_set, mask_mB, transpose_power

# The mask averages the two digit characters; it dies on odd half-integers.
print("m_B(1/4, 0) =", mask_mB(sys_, (0.25, 0)))
print("m_B(1/2, 7.3) =", mask_mB(sys_, (0.5, 7.3)))

# Powers of R^T pick up a k 2^(k-1) shear in the corner.
for k in (1, 2, 3, 10):
    print(f"(R^T)^{k} =", transpose_power(sys_, k).tolist())

# The infinite product of masks telescopes to a sinc in the first coordinate.
xi = np.column_stack([np.linspace(-4, 4, 9) + 0.3, np.full(9, 2.5)])
prod = fourier_product(sys_, xi, 40)
closed = fourier_closed_form(sys_, xi)
print("max |product - closed form| on a sample line:", np.abs(prod - closed).max())

# The second coordinate never matters, and the zeros are the nonzero integers in xi_1.
print("mu_hat(0.5, 0) vs mu_hat(0.5, -9):", fourier_closed_form(sys_, (0.5, 0)), fourier_closed_form(sys_, (0.5, -9)))
print("zero set at (3, 1.2), (0, 1.2), (2.5, 0):", [bool(in_zero_set(sys_, p)) for p in [(3, 1.2), (0, 1.2), (2.5, 0)]])

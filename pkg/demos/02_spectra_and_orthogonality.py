"""Building spectra {(n, beta(n))} and checking that they are orthogonal."""

import numpy as np

from spectral_lab import (
    DEFAULT_SYSTEM,
    Exponential,
    Linear,
    PowerLaw,
    PowerLog,
    check_orthogonal_combinatorial,
    gram_matrix,
    spectrum_window,
)

# Any beta at all works, as long as first coordinates are distinct integers.
for fam in (Linear(), PowerLaw(0.5), Exponential(2.0), PowerLog(1.0)):
    print(fam.describe(), spectrum_window(fam, 2).tolist())

pts = spectrum_window(PowerLaw(0.5), 5)
G = gram_matrix(DEFAULT_SYSTEM, pts)
print("11x11 Gram matrix, max |G - I| =", np.abs(G - np.eye(len(G))).max())

# Two points stacked on the same vertical line can never be orthogonal.
rep = check_orthogonal_combinatorial([(0, 0), (0, 1)])
print(rep.summary())

# Off-integer points give a Gram entry of size 2/pi.
print("|<e_0, e_(1/2,0)>| =", abs(gram_matrix(DEFAULT_SYSTEM, [(0, 0), (0.5, 0)])[0, 1]))

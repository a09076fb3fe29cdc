"""Spectra of the planar self-affine measure with R = [[2, 1], [0, 2]] and digits {(0,0), (1,0)}.

The measure is Lebesgue measure on [0, 1] x {0}; every spectrum has the form
``{(n, beta(n)) : n in Z}``.  This package builds such spectra, checks their
orthogonality and completeness, and estimates their Beurling dimension and
density by exact lattice-point counting.
"""

from .completeness import jp_spectrum_check, q_lambda_truncated, summation_identity_residual
from .density import (
    CenterPolicy,
    CountingProfile,
    RadiusSchedule,
    banach_density,
    banach_dimension,
    beurling_dimension,
    brute_force_count,
    count_in_ball,
    dimension_upper_bound,
    upper_beurling_density,
)
from .errors import (
    DegenerateProfileError,
    ExcludedPointError,
    MalformedSpectrumError,
    OracleIncompleteError,
    RepresentabilityError,
    SpectralLabError,
    UnsupportedSystemError,
)
from .measure import (
    DEFAULT_SYSTEM,
    SelfAffineSystem,
    empirical_fourier,
    fourier_closed_form,
    fourier_product,
    in_zero_set,
    mask_mB,
    sample_measure,
    transpose_power,
    zero_set_union_member,
)
from .report import VerificationReport
from .spectra import (
    BetaFamily,
    Custom,
    DensityCalibrated,
    Exponential,
    Linear,
    PowerLaw,
    PowerLawScaled,
    PowerLog,
    Spectrum,
    Zero,
    beta_eval,
    check_orthogonal_combinatorial,
    check_orthogonal_gram,
    density_family,
    dimension_family,
    gram_matrix,
    level_set_family,
    spectrum_window,
)

__version__ = "0.1.0"

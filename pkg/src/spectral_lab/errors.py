"""Exception types raised across the package."""


class SpectralLabError(Exception):
    """Base class for all package errors."""


class UnsupportedSystemError(SpectralLabError, ValueError):
    """Operation is only defined for the default (R, B) system."""


class RepresentabilityError(SpectralLabError, OverflowError):
    """A value does not fit the floating point or integer range in use."""


class MalformedSpectrumError(SpectralLabError, ValueError):
    """Point list is not a graph over Z (non-integer or repeated first coordinate)."""


class ExcludedPointError(SpectralLabError, ValueError):
    """Frequency lies in the measure-zero set excluded from the completeness test."""


class OracleIncompleteError(SpectralLabError, RuntimeError):
    """Brute-force enumeration cap is too small to be exhaustive."""


class DegenerateProfileError(SpectralLabError, ValueError):
    """Counting profile cannot support a log-log fit."""

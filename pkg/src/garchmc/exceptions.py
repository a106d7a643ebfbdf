"""Exception hierarchy for garchmc."""


class GarchMCError(Exception):
    """Base class for all garchmc errors."""


class InvalidParameterError(GarchMCError):
    """Parameter vector violates constraints or contains non-finite values."""


class NumericOverflowError(GarchMCError):
    """A likelihood evaluation produced a non-finite intermediate."""


class DataValidationError(GarchMCError):
    """Input data failed validation (bad prices, unparsable rows, ...)."""


class InsufficientDataError(DataValidationError):
    """Fewer observations than the operation requires."""


class DegenerateSampleError(GarchMCError):
    """Accumulated draws have a rank-deficient covariance even after jitter."""


class TuningFailureError(GarchMCError):
    """Step-size tuning failed to reach the target acceptance band."""

    def __init__(self, message, last_acceptance):
        super().__init__(message)
        self.last_acceptance = last_acceptance


class DegenerateSeriesError(GarchMCError):
    """A series has zero variance; autocorrelations are undefined."""


class NoPlateauError(GarchMCError):
    """No self-consistent truncation window found below the lag bound.

    ``lower_bound`` carries the partial sum at the largest available lag.
    """

    def __init__(self, message, lower_bound, t_max):
        super().__init__(message)
        self.lower_bound = lower_bound
        self.t_max = t_max


class ComparisonRefusedError(GarchMCError):
    """Two runs cannot be compared (different underlying data)."""

"""Exception types shared across the package."""


class InvalidDimensionError(ValueError):
    """Space dimension must be a positive integer."""


class UnsupportedExponentError(ValueError):
    """l^p smoothness is only available for p >= 2."""


class InvalidLevelError(ValueError):
    """Probability level outside its admissible range."""


class InvalidThresholdError(ValueError):
    """Tail threshold must be positive."""


class InvalidQError(ValueError):
    """Moment order q must exceed 2."""


class InfiniteMomentError(ValueError):
    """Requested moment order at or above the distribution's tail index."""


class UnsupportedFunctionError(TypeError):
    """Doob construction requires a coordinate-separable function spec."""


class PreconditionError(ValueError):
    """Input violates a documented precondition of the check."""


class InternalInconsistencyError(RuntimeError):
    """Two redundant computations of the same quantity disagree."""


class DomainError(ValueError):
    """Objective could not be evaluated anywhere in the searched bracket."""


class InvalidCountError(ValueError):
    """Success count outside [0, trials]."""

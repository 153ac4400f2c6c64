"""Exception hierarchy.

Validation problems derive from :class:`ValueError`; numerical breakdowns
derive from :class:`NumericalFailure` so callers (and the CLI exit codes)
can tell bad input apart from a solver that did not converge.
"""


class FermiMIError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(FermiMIError, ValueError):
    """Input violates a documented precondition."""


class InvalidInterval(ValidationError):
    pass


class TouchingIntervals(ValidationError):
    pass


class OverlappingIntervals(ValidationError):
    pass


class PoleAtEndpoint(ValidationError):
    pass


class DomainError(ValidationError):
    pass


class RegionsOverlap(ValidationError):
    pass


class InvalidDensityMatrix(ValidationError):
    pass


class DimensionMismatch(ValidationError):
    pass


class InvalidPath(ValidationError):
    pass


class SupportViolation(ValidationError):
    """support(rho) is not contained in support(sigma); S(rho, sigma) = +inf."""


class NumericalFailure(FermiMIError, ArithmeticError):
    pass


class SpectrumOutOfRange(NumericalFailure):
    pass


class QuadratureFailure(NumericalFailure):
    pass

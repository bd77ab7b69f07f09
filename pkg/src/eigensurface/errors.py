"""Exception types shared across the package.

The CLI maps these onto process exit codes: ArgumentError -> 2,
NumericError (and subclasses) -> 3, StructuralViolationError -> 4.
"""


class EigenSurfaceError(Exception):
    """Base class for all package errors."""


class ArgumentError(EigenSurfaceError, ValueError):
    """Invalid argument, malformed input file, or broken precondition."""


class NumericError(EigenSurfaceError, ArithmeticError):
    """A numerical routine failed, e.g. the eigenvalue solver did not converge."""

    def __init__(self, message, matrix=None):
        super().__init__(message)
        self.matrix = matrix


class TrackingError(NumericError):
    """Adaptive eigenpath tracking exhausted its refinement budget."""

    def __init__(self, message, interval=None):
        super().__init__(message)
        self.interval = interval


class StructuralViolationError(EigenSurfaceError):
    """A mathematically guaranteed invariant failed numerically.

    Raised when per-sample component counts disagree or a Perron slot loses
    simplicity; usually a sign of misconfigured tolerances, not of the input.
    """

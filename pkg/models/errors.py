"""
Exception hierarchy shared by all packages.

UsageError subclasses mean the caller asked for something invalid (CLI exit 1).
InvariantViolation subclasses mean a checked mathematical property failed (CLI exit 2).
"""


class MZLabError(Exception):
    """Root of all mzlab errors."""


class UsageError(MZLabError, ValueError):
    """Invalid argument, config value or input file."""


class ConfigError(UsageError):
    pass


class EmptySupportError(UsageError):
    pass


class ScaleOutOfRangeError(UsageError):
    pass


class InsufficientQuadratureError(UsageError):
    pass


class OrderShortfallError(UsageError):
    pass


class TruncationError(UsageError):
    pass


class DimensionCapError(UsageError):
    pass


class InvariantViolation(MZLabError, AssertionError):
    """A checked invariant does not hold."""


class SupportTooSparseError(InvariantViolation):
    pass


class NotDominantError(InvariantViolation):
    pass


class OrphanPointsError(InvariantViolation):
    pass


class ReferenceQuadratureError(InvariantViolation):
    pass


class QuadratureInfeasibleError(InvariantViolation):
    """
    No nonnegative weights reproduce the moments.

    Attributes:
        residual: best moment residual reached, or None when the LP reported infeasibility
        direction: polynomial whose cell functionals are all >= 0 while its
            integral is negative (Farkas certificate), or None
    """

    def __init__(self, message: str, residual=None, direction=None):
        super().__init__(message)
        self.residual = residual
        self.direction = direction

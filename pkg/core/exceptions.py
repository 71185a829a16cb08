"""
Exception hierarchy shared by every vortexlab app.

Precondition failures are ValueErrors, numerical failures are ArithmeticErrors,
so callers that only know the builtin types still catch them sensibly.
"""


class VortexLabError(Exception):
    """Base class for all domain errors."""


class PreconditionError(VortexLabError, ValueError):
    """An operation was called outside its domain."""


class NumericalError(VortexLabError, ArithmeticError):
    """A computation ran but its result cannot be trusted."""


class GridSizeError(PreconditionError):
    pass


class DegreeMismatchError(PreconditionError):
    pass


class CoincidentZerosError(PreconditionError):
    pass


class HypothesesViolatedError(PreconditionError):
    pass


class CaseMismatchError(PreconditionError):
    pass


class PairingDegenerateError(PreconditionError):
    pass


class UnsupportedGenusError(PreconditionError):
    pass


class NotDefinedError(PreconditionError):
    pass


class UnclassifiedError(PreconditionError):
    pass


class ZerosTooCloseError(PreconditionError):
    pass


class InsufficientResolutionError(PreconditionError):
    pass


class NonQuantizedFluxError(NumericalError):
    pass


class UnreliableRankError(NumericalError):
    def __init__(self, message, gap_ratio=None):
        super().__init__(message)
        self.gap_ratio = gap_ratio


class StalledError(NumericalError):
    def __init__(self, message, best_residual=None, iterations=None):
        super().__init__(message)
        self.best_residual = best_residual
        self.iterations = iterations


class AmbiguousWindingError(NumericalError):
    pass


class ConservationError(NumericalError):
    pass


class TableMismatchError(VortexLabError):
    """A derived classification disagrees with the transcribed table."""

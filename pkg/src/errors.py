"""
Exception types raised by the toolkit.

All of them derive from ValueError so callers that only care about
"bad input" can keep catching ValueError.
"""


class QFError(ValueError):
    """Base class for every error raised by the toolkit."""


class NonHermitianError(QFError):
    """Matrix asymmetry exceeds the Hermiticity tolerance."""


class NonPositiveError(QFError):
    """A density matrix has an eigenvalue below -TOL_PSD."""


class TraceMismatchError(QFError):
    """A density matrix does not have unit trace."""


class DimensionMismatchError(QFError):
    """Operand shapes or subsystem tags are incompatible."""


class NotNormalizedError(QFError):
    """A state vector does not have unit norm."""


class DomainError(QFError):
    """A scalar argument lies outside the function's domain."""


class NotUnitaryError(QFError):
    """A matrix expected to be unitary is not."""


class RankDeficientError(QFError):
    """A state is too close to singular for the requested functional."""


class NoConvergenceError(QFError):
    """An iterative routine stopped before meeting its tolerance."""


class UsageError(QFError):
    """Invalid command-line usage."""

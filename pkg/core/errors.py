"""
Errors
======
Exception hierarchy shared by every module of the toolkit.
"""


class QuasiperiodError(Exception):
    """Root of all toolkit errors."""


class ParameterError(QuasiperiodError, ValueError):
    """A parameter or precondition of an operation was violated."""


class UnreachableLengthError(ParameterError):
    """No conical combination of the period set reaches the requested length."""


class BudgetExceededError(ParameterError):
    """An exhaustive enumeration would exceed the configured budget."""


class StreamTooShortError(ParameterError):
    """A stream was finalized before q letters arrived."""


class StreamUsageError(QuasiperiodError, RuntimeError):
    """A stream was used out of order (e.g. push after finalize)."""


class GenerationError(QuasiperiodError, RuntimeError):
    """A randomized generator ran out of attempts."""


class InvariantViolation(QuasiperiodError, AssertionError):
    """A guarantee that must always hold was observed to fail."""

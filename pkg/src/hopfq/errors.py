"""Exception types shared across the package.

The CLI maps :class:`ValidationError` to exit code 1 and
:class:`ConsistencyError` to exit code 2.
"""


class HopfqError(Exception):
    """Base class for all package errors."""


class ValidationError(HopfqError, ValueError):
    """Input violates a documented precondition."""


class ZeroDivisorError(ValidationError, ZeroDivisionError):
    """Inverse requested for the zero element of an algebra."""


class PoleError(ValidationError):
    """Base point sits at a pole where the requested frame is undefined."""


class ConsistencyError(HopfqError, RuntimeError):
    """Two computations that must agree did not."""

"""Exception types shared across the package.

The CLI maps each class to a distinct exit code.
"""


class PQSurfError(Exception):
    """Base class for all errors raised by pqsurf."""


class ValidationError(PQSurfError, ValueError):
    """Malformed or mathematically invalid input."""


class ResourceCapError(PQSurfError, RuntimeError):
    """A configured size or search cap was exceeded."""


class InconsistencyError(PQSurfError, ArithmeticError):
    """Computed data violates an identity that must hold (e.g. Noether)."""

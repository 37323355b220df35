"""Exception hierarchy shared by the package and mapped to CLI exit codes."""

from .polyf import EnumerationCapExceeded, InexactDivisionError

__all__ = [
    "MathPreconditionError",
    "InvariantViolation",
    "InexactDivisionError",
    "EnumerationCapExceeded",
]


class MathPreconditionError(ValueError):
    """Input violates a mathematical precondition (exit code 2)."""


class InvariantViolation(RuntimeError):
    """An internal consistency check failed; this indicates a bug (exit code 3)."""

"""Exception types shared across the package.

Each class maps onto one CLI exit code (see ``cli.EXIT_CODES``).
"""


class OpucError(Exception):
    """Base class for all package errors."""


class ArgumentError(OpucError, ValueError):
    """An input violates a documented precondition."""


class DomainError(OpucError, ValueError):
    """A point lies outside the region where an operation is defined."""


class NumericError(OpucError, ArithmeticError):
    """A numerical routine produced a non-finite or unresolved result."""


class ConsistencyError(NumericError):
    """An internal algebraic cancellation did not happen."""


class UnsupportedCaseError(OpucError):
    """The requested regime is deliberately not implemented by default."""


class PropertyViolation(OpucError):
    """A verified identity or inequality failed; carries the offending case."""

    def __init__(self, message, case=None):
        super().__init__(message)
        self.case = case

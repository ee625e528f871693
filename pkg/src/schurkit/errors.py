"""Exception types shared across schurkit."""


class SchurkitError(Exception):
    """Base class for library errors."""


class CapacityError(SchurkitError, RuntimeError):
    """A computation would exceed a configured size bound."""

    def __init__(self, message, bound=None):
        super().__init__(message)
        self.bound = bound


class ContractViolation(SchurkitError, ValueError):
    """An input violates the documented contract of an operation."""


class PreconditionError(SchurkitError, ValueError):
    """A structural precondition (abelian base, n >= 3, ...) does not hold."""


class SnfOverflowError(SchurkitError, OverflowError):
    """Checked fixed-width arithmetic overflowed; rerun in big-integer mode."""

"""Exception types shared across the package."""


class ConfigurationError(ValueError):
    """Invalid configuration: bad family/rank, unsupported field, bad flags."""


class DomainError(ValueError):
    """An argument violates a documented precondition (e.g. not a root)."""


class InvariantViolation(RuntimeError):
    """An internal consistency check failed; indicates a bug, not bad input."""


class VerificationMismatch(RuntimeError):
    """A verification suite found a result disagreeing with its oracle."""


class BudgetExceeded(RuntimeError):
    """A computation would exceed the configured element or time budget."""

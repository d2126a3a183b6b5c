"""Exception types shared across the package."""


class ConfigurationError(ValueError):
    """Invalid build configuration (unknown type, bad rank, bad index set)."""


class PreconditionError(ValueError):
    """An operation was called outside its stated domain."""


class StructuralError(RuntimeError):
    """A structural assumption failed (seed disagreement, missing factorization)."""


class BudgetError(RuntimeError):
    """A resource budget was exhausted; carries partial statistics."""

    def __init__(self, message, stats=None):
        super().__init__(message)
        self.stats = dict(stats or {})

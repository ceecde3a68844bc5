"""Exception types shared across the package."""

DEFAULT_DOMAIN_BUDGET = 2 ** 20
DEFAULT_U_BUDGET = 512


class BudgetExceeded(RuntimeError):
    """An enumeration would exceed its configured point budget."""


class InputError(ValueError):
    """Input that is well-formed but outside what an operation accepts."""

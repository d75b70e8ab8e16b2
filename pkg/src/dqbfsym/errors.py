"""Exception types shared across the package."""


class BudgetExceeded(RuntimeError):
    """A configured size or search budget was exceeded."""

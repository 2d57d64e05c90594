from __future__ import annotations


class ValidationError(ValueError):
    """Bad user input: non-prime modulus, m < 2, m > n, and so on."""


class BudgetExceeded(ValidationError):
    """The rank oracle was asked for a grid larger than its budget."""


class NonStandardError(ValueError):
    """An operation that needs a standard Jordan partition got a non-standard pair."""

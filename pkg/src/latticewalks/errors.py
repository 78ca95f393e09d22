"""Shared exception types."""


class ResourceLimitError(RuntimeError):
    """A computation exceeded its configured resource budget."""


class NumericalError(RuntimeError):
    """A numerical routine failed to converge or missed its tolerance."""

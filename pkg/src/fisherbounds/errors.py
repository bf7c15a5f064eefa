"""Exception types shared across the package."""

__all__ = [
    "MarginViolation",
    "DegenerateMargin",
    "OutOfRange",
    "CapacityExceeded",
    "NegativeDependency",
    "InvalidK",
]


class MarginViolation(ValueError):
    """Cell counts break the 2x2 margin constraints."""


class DegenerateMargin(ValueError):
    """A margin equals 0 or n; every quantity here divides by such margins."""


class OutOfRange(ValueError):
    """An index fell outside a tabulated or permitted range."""


class CapacityExceeded(ValueError):
    """A request went past a configured size budget."""


class NegativeDependency(ValueError):
    """The table shows no positive dependency, so the tail machinery does not apply."""


class InvalidK(ValueError):
    """The exact-term count k must be a positive integer."""

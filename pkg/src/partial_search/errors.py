"""Exception types raised by the partial-search toolkit."""

from __future__ import annotations


class PartialSearchError(ValueError):
    """Base class for all input and solver errors."""


class NonDivisible(PartialSearchError):
    """The block count does not divide the item count."""


class TooSmall(PartialSearchError):
    """Fewer than two blocks, or blocks with fewer than two items."""


class IndexOutOfRange(PartialSearchError):
    """A target index outside ``[0, N)``."""


class NoRoot(PartialSearchError):
    """A constraint equation has no admissible solution."""

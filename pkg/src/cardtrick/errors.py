"""Exception hierarchy shared by every cardtrick module."""

from __future__ import annotations


class TrickError(Exception):
    """Base class for all errors raised by cardtrick."""


class InvalidArgument(TrickError, ValueError):
    pass


class SpecError(InvalidArgument):
    """A (C, n, j) triple that violates one of the trick constraints.

    ``constraint`` is a stable short code naming the violated rule, suitable
    for machine output.
    """

    def __init__(self, constraint: str, message: str) -> None:
        super().__init__(message)
        self.constraint = constraint


class IntegerOverflow(TrickError, OverflowError):
    """An exact power grew past the configured integer width."""

    def __init__(self, base: int, exponent: int, max_bits: int) -> None:
        super().__init__(
            f"{base}**{exponent} exceeds the {max_bits}-bit integer width"
        )
        self.base = base
        self.exponent = exponent
        self.max_bits = max_bits


class CrossCheckError(TrickError):
    """Two independent computations of the same quantity disagree."""

    def __init__(self, message: str, triple: tuple[int, int, int] | None = None) -> None:
        super().__init__(message)
        self.triple = triple

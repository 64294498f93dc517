"""Exception types shared across the package."""

from __future__ import annotations


class OagError(Exception):
    """Base class for all errors raised by this package."""


class SpecMismatchError(OagError, ValueError):
    """Two elements from different group specs were combined."""


class NotDivisibleError(OagError, ArithmeticError):
    """Exact division was requested for a non-divisible element."""


class PreconditionError(OagError, ValueError):
    """An operation was called outside its stated precondition."""


class NotReducibleError(PreconditionError):
    """A congruence literal with p | k whose term is not of the form
    p*a' + (element of the named convex subgroup); such a literal has a
    constant truth value and cannot be rewritten to a smaller coefficient."""


class ParseError(OagError, ValueError):
    """Syntax error with a character position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position

"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class RDError(Exception):
    """Base class for all errors raised by rdcong."""


class RingMismatch(RDError):
    pass


class NotInvertible(RDError):
    pass


class BadResidue(RDError, ValueError):
    pass


class InsufficientPrecision(RDError):
    """A request needs more coefficients than the inputs can justify."""


class BadPrime(RDError, ValueError):
    pass


class NotCoprime(RDError, ValueError):
    pass


class TooLarge(RDError, ValueError):
    pass


class InvalidClaim(RDError, ValueError):
    pass


class ParseError(RDError):
    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class UnknownSymbol(ParseError):
    pass

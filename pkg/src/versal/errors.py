"""Exception types shared across the package."""


class VersalError(Exception):
    """Base class for all errors raised by this package."""


class RingMismatchError(VersalError):
    """Operands belong to different rings."""


class ParseError(VersalError):
    """Syntax error in a polynomial expression or input file."""

    def __init__(self, message, position=None, line=None):
        self.position = position
        self.line = line
        where = ""
        if line is not None:
            where += " (line %d)" % line
        if position is not None:
            where += " (column %d)" % (position + 1)
        super().__init__(message + where)


class GradingError(VersalError):
    """Missing, inconsistent, or non-positive grading data."""


class FiniteDimError(VersalError):
    """A quotient that must be finite-dimensional over QQ is not."""


class LiftError(VersalError):
    """A module lift that must exist could not be found."""


class ObstructionError(VersalError):
    """The supplied obstruction space does not span the actual obstructions."""

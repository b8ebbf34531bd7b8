"""Exception hierarchy.

Precondition failures (bad input, violated contracts) derive from
``PreconditionError`` so the CLI can map them to exit code 2.
"""


class DiffIdealError(Exception):
    pass


class PreconditionError(DiffIdealError, ValueError):
    """An operation was called outside its documented domain."""


class RingMismatchError(PreconditionError):
    pass


class ParseError(PreconditionError):
    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        where = []
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"column {column}")
        prefix = f"{', '.join(where)}: " if where else ""
        super().__init__(prefix + message)


class RationalImageError(PreconditionError):
    """A derivation image has a non-trivial denominator where a polynomial is required."""


class DimensionError(PreconditionError):
    """The ideal is not zero-dimensional."""


class IterationCapError(DiffIdealError):
    """A fixed-point iteration exceeded its cap; indicates an internal inconsistency."""


class InvalidScalarError(PreconditionError):
    pass


class DomainError(PreconditionError):
    """An argument lies outside the required subring or field."""

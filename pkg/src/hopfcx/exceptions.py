"""Exception types raised across the toolkit."""


class HopfcxError(Exception):
    """Base class for all toolkit errors."""


class NoSolution(HopfcxError):
    """The right-hand side is not in the column space."""


class DegreeOverflow(HopfcxError):
    pass


class BasisOverflow(HopfcxError):
    pass


class ConfluenceError(HopfcxError):
    """A presentation has unresolved overlap ambiguities."""

    def __init__(self, ambiguities):
        self.ambiguities = ambiguities
        super().__init__(f"{len(ambiguities)} unresolved overlap ambiguities")


class ValidationError(HopfcxError):
    """A structural invariant failed; the message names the invariant."""


class RadicalNotNilpotent(ValidationError):
    pass


class NotCharacterSplit(HopfcxError):
    pass


class CenterNotSplit(HopfcxError):
    pass


class RelationViolation(ValidationError):
    pass


class NotIdempotent(HopfcxError):
    pass


class InsufficientDepth(HopfcxError):
    pass


class LiftFailure(HopfcxError):
    pass


class ZeroClass(HopfcxError):
    pass


class ResourceBudgetExceeded(HopfcxError):
    pass


class InvalidParameters(HopfcxError):
    """Parameters outside the hypotheses of the wildness theorems."""


class UnknownType(HopfcxError):
    pass


class PresentationParseError(HopfcxError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}, column {column})"
        super().__init__(message + where)

"""Exception types raised by the engine.

Every engine error derives from ``CobError`` so callers (the CLI in
particular) can separate engine failures from programming errors.
"""

from __future__ import annotations


class CobError(Exception):
    """Base class for engine errors."""


class ParseError(CobError):
    """Malformed text input; carries an optional line/column position."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


# planar layer
class InvalidDiagram(CobError):
    pass


class DegenerateIntersection(InvalidDiagram):
    """Two strands touch at a vertex or tangentially instead of crossing."""


class OverlappingSegments(InvalidDiagram):
    pass


class NotSimple(CobError):
    pass


# category layer
class EndMismatch(CobError):
    pass


class BadIndex(CobError):
    pass


class TooFewEnds(CobError):
    pass


class TooManyEnds(CobError):
    pass


class ActionViolation(CobError):
    pass


class UnknownIntersection(CobError):
    pass


class IncompatibleSurgeries(CobError):
    pass


class UnknownObject(CobError):
    pass


# cabling layer
class ProfileMismatch(CobError):
    pass


class NotCommuting(CobError):
    pass


class NotExact(CobError):
    pass


# algebraic backend
class NotChainMap(CobError):
    pass


class NotEvaluable(CobError):
    pass


class MarkingNotCycle(CobError):
    pass


class InvalidPresentation(CobError):
    pass


# metrics
class BadWeight(CobError):
    pass


class MissingDelta(CobError):
    pass

"""Exception types shared across the package."""


class TriphyError(Exception):
    """Base class for all errors raised by this package."""


class EmptyInput(TriphyError):
    pass


class RaggedRow(TriphyError):
    def __init__(self, row: int, expected: int, got: int):
        super().__init__(f"row {row} has {got} entries, expected {expected}")
        self.row = row
        self.expected = expected
        self.got = got


class MissingValue(TriphyError):
    def __init__(self, row: int, col: int):
        super().__init__(f"missing value at row {row}, column {col}")
        self.row = row
        self.col = col


class IndexOutOfRange(TriphyError):
    pass


class SizeMismatch(TriphyError):
    pass


class MonochromaticEdge(TriphyError):
    pass


class DuplicateEdge(TriphyError):
    pass


class TooLarge(TriphyError):
    """A size-gated operation was asked to run beyond its configured bound."""


class StateBound(TriphyError):
    """A character exceeds the three-state limit of the decision pipeline."""


class BadR(TriphyError):
    pass


class EmptyMember(TriphyError):
    pass


class NotAnObstruction(TriphyError):
    pass


class NotChordal(TriphyError):
    pass


class NotProper(TriphyError):
    pass


class NonterminatingFill(TriphyError):
    """The triangulation fill loop exceeded its structural iteration bound.

    Each iteration adds one edge, so this is unreachable unless the cycle
    search itself is broken; it exists purely as a bug trap.
    """


class InternalContradiction(TriphyError):
    """An internal consistency assertion failed; indicates an implementation bug."""

"""Exception types raised by the library."""


class BranchOperError(Exception):
    """Base class for all library errors."""


class ParseError(BranchOperError):
    def __init__(self, msg, line=None, col=None):
        self.line = line
        self.col = col
        where = f" (line {line}, column {col})" if line is not None else ""
        super().__init__(msg + where)


class PoleAtBasepoint(BranchOperError):
    pass


class PoleAtPoint(BranchOperError):
    pass


class NonIntegerEigenvalue(BranchOperError):
    def __init__(self, msg, point=None):
        self.point = point
        super().__init__(msg)


class NonTraceless(BranchOperError):
    pass


class NonInvertibleChart(BranchOperError):
    pass


class NotNested(BranchOperError):
    pass


class NotLogarithmic(BranchOperError):
    """Connection has a pole of order > 1 where a residue was requested."""


class ResidueDoesNotPreserve(BranchOperError):
    pass


class EigenspaceDimensionMismatch(BranchOperError):
    pass


class NonReducedDivisor(BranchOperError):
    pass


class ConditionViolation(BranchOperError):
    pass


class NotAnOper(BranchOperError):
    pass


class FrameMismatch(BranchOperError):
    pass

"""Exception hierarchy shared by every ringlab module."""


class RingLabError(Exception):
    """Base class for all ringlab errors."""


class InvalidExpr(RingLabError, ValueError):
    pass


class CapExceeded(RingLabError):
    pass


class IndexOutOfRange(RingLabError, IndexError):
    pass


class DimensionMismatch(RingLabError, ValueError):
    pass


class NotAUnit(RingLabError, ValueError):
    pass


class NotUniquelyClean(RingLabError):
    pass


class PreconditionViolated(RingLabError):
    pass


class InternalCheckFailed(RingLabError, AssertionError):
    pass


class NotBijective(RingLabError):
    pass


class ParseError(RingLabError, ValueError):
    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)


class SemanticError(RingLabError, ValueError):
    pass


class RangeError(RingLabError, ValueError):
    pass

"""Exception types raised across the package."""


class QFrameError(Exception):
    """Base class for all library errors."""


class NonFiniteError(QFrameError, ValueError):
    pass


class DimensionMismatch(QFrameError, ValueError):
    pass


class DivisionByZero(QFrameError, ZeroDivisionError):
    pass


class SingularMatrix(QFrameError, ArithmeticError):
    pass


class NotHermitian(QFrameError, ValueError):
    pass


class NoConvergence(QFrameError, ArithmeticError):
    pass


class MultiplicityViolation(QFrameError, ArithmeticError):
    """Embedded spectrum could not be split into runs of four equal values."""


class NotAFrame(QFrameError, ValueError):
    pass


class NotABasis(QFrameError, ValueError):
    pass


class EmptySpan(QFrameError, ValueError):
    pass


class InvalidP(QFrameError, ValueError):
    pass


class NotARepresentation(QFrameError, ValueError):
    pass


class ParseError(QFrameError, ValueError):
    pass


class ValidationError(QFrameError, ValueError):
    pass


class InvalidNoiseSpec(QFrameError, ValueError):
    pass

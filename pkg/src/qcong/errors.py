"""Exception types shared by every module."""


class QCongError(Exception):
    """Base class for all errors raised by the package."""


class InvalidParameter(QCongError, ValueError):
    """An argument is outside the domain of the function."""


class InvalidOperand(QCongError, ValueError):
    """Two series cannot be combined (mismatched fractional offsets, etc.)."""


class NotInvertible(QCongError, ZeroDivisionError):
    """The leading coefficient of a series is zero or unknown."""


class PrecisionExhausted(QCongError):
    """A coefficient beyond the known precision was requested."""


class NotPolynomialInY(QCongError):
    """A series is not a finite Laurent polynomial in the hauptmodul."""


class FitFailed(QCongError):
    """A linear fit has no solution consistent with the data."""


class AmbiguousFit(QCongError):
    """A linear fit has more than one solution."""


class TableInconsistent(QCongError):
    """A transcribed table disagrees with an independent computation."""

"""Exact q-series engine and congruence verifier for partition-type statistics."""

from .errors import (
    QCongError,
    InvalidParameter,
    InvalidOperand,
    NotInvertible,
    PrecisionExhausted,
    NotPolynomialInY,
    FitFailed,
    AmbiguousFit,
    TableInconsistent,
)
from .qseries import QSeries

__all__ = [
    "QCongError",
    "InvalidParameter",
    "InvalidOperand",
    "NotInvertible",
    "PrecisionExhausted",
    "NotPolynomialInY",
    "FitFailed",
    "AmbiguousFit",
    "TableInconsistent",
    "QSeries",
]

__version__ = "0.1.0"

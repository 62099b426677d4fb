"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class PadicError(Exception):
    """Base class for all errors raised by :mod:`padic_so3`."""


class ParseError(PadicError, ValueError):
    def __init__(self, message: str, text: str = "", position: int = 0):
        super().__init__(f"{message} (at position {position} in {text!r})")
        self.text = text
        self.position = position


class ContextMismatch(PadicError, ValueError):
    pass


class DivideByZero(PadicError, ZeroDivisionError):
    pass


class PrecisionExhausted(PadicError, ArithmeticError):
    """Raised when a result would be known to fewer digits than needed."""


class Incomparable(PrecisionExhausted):
    """Two numbers agree on every known digit but share too few digits to call equal."""


class UndefinedOnZero(PadicError, ValueError):
    pass


class NotASquare(PadicError, ValueError):
    pass


class NotDefinite(PadicError, ValueError):
    pass


class ZeroVector(PadicError, ValueError):
    pass


class KappaMismatch(PadicError, ValueError):
    pass


class NotOrthogonal(PadicError, ValueError):
    pass


class InvalidColumn(PadicError, ValueError):
    pass


class IdentityHasNoAxis(PadicError, ValueError):
    pass


class NotInPlane(PadicError, ValueError):
    pass


class UnsupportedPrime(PadicError, ValueError):
    pass


class NotIntegral(PadicError, ValueError):
    """A matrix that should be reduced modulo p^k has a non-integral entry."""


class BudgetExceeded(PadicError, RuntimeError):
    pass


class InternalConsistencyError(PadicError, AssertionError):
    """A proven identity failed to hold numerically. Indicates a bug, never bad input."""


class DecompositionInfeasible(PadicError):
    """No decomposition exists for the requested axis order; carries the certificate."""

    def __init__(self, report):
        super().__init__(
            f"order {report.order} infeasible: {report.witness} "
            f"(square class {report.witness_class.label}) is not a square"
        )
        self.report = report

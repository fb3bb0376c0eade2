"""Exception hierarchy shared by every cfinite module."""


class CFiniteError(Exception):
    """Base class for all library errors."""


class MathError(CFiniteError, ArithmeticError):
    """A mathematical precondition failed (CLI exit status 2)."""


class DivisionByZeroPoly(MathError, ZeroDivisionError):
    pass


class NotAPowerSeries(MathError, ValueError):
    """The rational function has a pole at the origin."""


class FactorizationFailure(MathError):
    """Numeric root refinement did not converge or could not be certified."""


class IllConditioned(MathError):
    """A numeric linear system left a residual above tolerance."""


class InsufficientTerms(CFiniteError, ValueError):
    pass


class ParseError(CFiniteError, ValueError):
    """Malformed input text; ``position`` is a 0-based character offset."""

    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class ArityError(ParseError):
    """Number of initial values differs from the recurrence order."""


class IndexRangeError(ParseError, IndexError):
    """An ``a(n+j)`` reference lies outside ``0 <= j <= order``."""

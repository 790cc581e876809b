"""Exception hierarchy shared by every qmock module."""


class QMockError(Exception):
    """Base class for all errors raised by qmock."""


class ZeroLeadingCoefficient(QMockError):
    """A series that must be inverted is zero to its full precision."""


class InsufficientPrecision(QMockError):
    """A coefficient or comparison was requested beyond the known precision."""


class NonIntegralExponents(QMockError):
    """Dissection was asked of a series with fractional exponents."""


class NonconvergentProduct(QMockError):
    """An infinite product whose factors do not tend to 1 formally."""


class DegenerateSpecialization(QMockError):
    """A theta factor that must be nonzero vanishes identically."""


class ExactPole(QMockError):
    """An Appell sum denominator 1 - q^e x z is exactly zero."""


class ZeroTheta(QMockError):
    """The normalizing theta function of an Appell function vanishes."""


class InvalidP(QMockError):
    """The level parameter p is not an odd integer >= 3."""


class UnknownSuite(QMockError):
    """No verification suite is registered under the requested name."""


class DSLSyntaxError(QMockError):
    """Parse failure in the identity language.

    ``offset`` is the byte offset into the source text and ``expected``
    the set of tokens that would have been accepted there.
    """

    def __init__(self, message, offset, expected=()):
        self.offset = offset
        self.expected = frozenset(expected)
        detail = message
        if self.expected:
            detail += " (expected one of: " + ", ".join(sorted(self.expected)) + ")"
        super().__init__(f"{detail} at offset {offset}")


class EvaluationError(QMockError):
    """An error raised while evaluating a parsed expression.

    Wraps the underlying module error together with the source span and the
    printed form of the offending subexpression.
    """

    def __init__(self, cause, span=None, subexpr=None):
        self.cause = cause
        self.span = span
        self.subexpr = subexpr
        where = f" in {subexpr!r}" if subexpr else ""
        if span is not None:
            where += f" [{span[0]}:{span[1]}]"
        super().__init__(f"{type(cause).__name__}: {cause}{where}")

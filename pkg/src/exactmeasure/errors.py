"""Exception hierarchy shared by every module of the package."""


class MeasureError(Exception):
    """Base class for all errors raised by exactmeasure."""


class UndefinedSum(MeasureError, ArithmeticError):
    """``inf + (-inf)`` (or the reverse) was requested."""


class UnsupportedExponent(MeasureError, ArithmeticError):
    """The power would need an irrational value."""


class NegativeTerm(MeasureError, ValueError):
    pass


class MalformedBound(MeasureError, ValueError):
    pass


class NotACover(MeasureError, ValueError):
    """A family of open intervals fails to cover the target set.

    ``witness`` is a point of the target left uncovered.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class PreconditionFailed(MeasureError, ValueError):
    pass


class HypothesisFailed(MeasureError, ValueError):
    """A theorem hypothesis does not hold on the supplied instance."""

    def __init__(self, hypothesis, witness=None):
        super().__init__(f"hypothesis failed: {hypothesis}" + (f" (witness: {witness})" if witness is not None else ""))
        self.hypothesis = hypothesis
        self.witness = witness


class EmptyGenerators(PreconditionFailed):
    pass


class NotMeasurable(MeasureError, ValueError):
    pass


class SpaceMismatch(MeasureError, ValueError):
    pass


class IncompatibleSpace(SpaceMismatch):
    pass


class UnsupportedFactorKinds(MeasureError, TypeError):
    pass


class UnsupportedShape(MeasureError, TypeError):
    pass


class AnchorOutOfSpace(MeasureError, ValueError):
    pass


class NegativeValue(MeasureError, ValueError):
    pass


class NegativeFunction(NegativeValue):
    pass


class NotIntegrable(MeasureError, ArithmeticError):
    """Raised with ``part`` set to ``"positive"`` or ``"negative"``."""

    def __init__(self, part, message=None):
        super().__init__(message or f"not integrable: the {part} part has an infinite integral")
        self.part = part


class NonDiffuseMeasure(MeasureError, ValueError):
    pass


class NotAbsolutelySummable(MeasureError, ArithmeticError):
    pass


class NotAlmostSummable(MeasureError, ArithmeticError):
    pass


class ZeroMeasure(MeasureError, ValueError):
    pass


class UnboundedFunction(MeasureError, ValueError):
    pass

"""Exception hierarchy shared by every layer of the engine."""

from __future__ import annotations


class HyperlimError(Exception):
    """Base class. ``span`` is filled in by the expression evaluator."""

    def __init__(self, message: str = "", span=None):
        super().__init__(message)
        self.message = message
        self.span = span

    def __str__(self) -> str:
        if self.span is not None:
            return f"{self.message} (at {self.span.start}:{self.span.end})"
        return self.message


class InvalidScalar(HyperlimError, ValueError):
    """A NaN or overflowed float was offered where a finite real is required."""


class PrecisionExhausted(HyperlimError):
    """The truncation window no longer determines the quantity asked for."""


class DomainError(HyperlimError, ValueError):
    pass


class DivisionByZero(DomainError, ZeroDivisionError):
    pass


class IndeterminateDivisor(HyperlimError):
    """Divisor whose leading behaviour is a bounded-but-unknown term."""


class IndeterminateSign(HyperlimError):
    pass


class IndeterminateClass(HyperlimError):
    pass


class IllegalForm(HyperlimError):
    """An illegal extended-real form such as ``inf-inf`` or ``0*inf``.

    Callers should discard the computation and try another route.
    """

    def __init__(self, form: str, span=None):
        super().__init__(f"illegal form {form}", span)
        self.form = form


class UndeterminedStandardPart(HyperlimError):
    """The standard part is a real number known only to lie in ``interval``."""

    def __init__(self, interval: tuple[float, float], span=None):
        lo, hi = interval
        super().__init__(f"standard part undetermined within [{lo:.12g}, {hi:.12g}]", span)
        self.interval = (lo, hi)


class NotFinite(HyperlimError, ValueError):
    pass


class ParseError(HyperlimError, ValueError):
    pass


class InvalidInput(HyperlimError, ValueError):
    pass


class NumericalFailure(HyperlimError, ArithmeticError):
    pass

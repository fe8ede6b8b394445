"""The extended real line and the standard part mapping into it."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, IllegalForm, InvalidScalar, NotFinite, PrecisionExhausted, UndeterminedStandardPart
from .hyperfield import (
    Hyper,
    _env_is_large,
    _env_is_small,
    _fuzz_dominated,
    from_real,
    sub,
)


@dataclass(frozen=True, order=True)
class ExtendedReal:
    """A real number or one of the two infinities, stored as a float."""

    value: float

    def __post_init__(self):
        if self.value != self.value:
            raise InvalidScalar("NaN is not an extended real")

    @property
    def is_finite(self) -> bool:
        return math.isfinite(self.value)

    @property
    def is_plus_infinity(self) -> bool:
        return self.value == math.inf

    @property
    def is_minus_infinity(self) -> bool:
        return self.value == -math.inf

    def __float__(self) -> float:
        return self.value

    def __str__(self) -> str:
        return format_ext(self)

    def __repr__(self) -> str:
        return f"ExtendedReal({format_ext(self)})"


PLUS_INFINITY = ExtendedReal(math.inf)
MINUS_INFINITY = ExtendedReal(-math.inf)


def finite(x: float) -> ExtendedReal:
    x = float(x)
    if not math.isfinite(x):
        raise InvalidScalar(f"finite value expected, got {x!r}")
    return ExtendedReal(x)


def format_ext(x: ExtendedReal) -> str:
    if x.value == math.inf:
        return "inf"
    if x.value == -math.inf:
        return "-inf"
    v = x.value
    if v == 0:
        return "0"
    return f"{v:.15g}"


def parse_ext(text: str) -> ExtendedReal:
    s = text.strip().lower()
    if s in ("inf", "+inf", "infinity", "+infinity"):
        return PLUS_INFINITY
    if s in ("-inf", "-infinity"):
        return MINUS_INFINITY
    try:
        return finite(float(s))
    except (ValueError, InvalidScalar):
        raise ValueError(f"not an extended real: {text!r}") from None


def _ext(v) -> ExtendedReal:
    return v if isinstance(v, ExtendedReal) else ExtendedReal(float(v))


def _checked(v: float) -> ExtendedReal:
    if not math.isfinite(v):
        raise InvalidScalar("real arithmetic overflowed")
    return ExtendedReal(v)


# --------------------------------------------------------------------------
# legal and illegal operations


def ext_add(a, b) -> ExtendedReal:
    a, b = _ext(a), _ext(b)
    if a.is_finite and b.is_finite:
        return _checked(a.value + b.value)
    if not a.is_finite and not b.is_finite and a.value != b.value:
        raise IllegalForm("inf-inf")
    return a if not a.is_finite else b


def ext_neg(a) -> ExtendedReal:
    return ExtendedReal(-_ext(a).value)


def ext_sub(a, b) -> ExtendedReal:
    return ext_add(a, ext_neg(b))


def ext_mul(a, b) -> ExtendedReal:
    a, b = _ext(a), _ext(b)
    if a.is_finite and b.is_finite:
        return _checked(a.value * b.value)
    if a.value == 0 or b.value == 0:
        raise IllegalForm("0*inf")
    negative = (a.value < 0) != (b.value < 0)
    return MINUS_INFINITY if negative else PLUS_INFINITY


def ext_div(a, b) -> ExtendedReal:
    a, b = _ext(a), _ext(b)
    if b.value == 0:
        raise IllegalForm("0/0" if a.value == 0 else "1/0")
    if not a.is_finite and not b.is_finite:
        raise IllegalForm("inf/inf")
    if not b.is_finite:
        return ExtendedReal(0.0)
    if not a.is_finite:
        return a if b.value > 0 else ext_neg(a)
    return _checked(a.value / b.value)


def ext_exp(a) -> ExtendedReal:
    a = _ext(a)
    if a.is_plus_infinity:
        return PLUS_INFINITY
    if a.is_minus_infinity:
        return ExtendedReal(0.0)
    try:
        return _checked(math.exp(a.value))
    except OverflowError:
        raise InvalidScalar("exp overflowed") from None


def ext_ln(a) -> ExtendedReal:
    a = _ext(a)
    if a.is_plus_infinity:
        return PLUS_INFINITY
    if a.value <= 0:
        raise DomainError("ln of a non-positive extended real")
    return ExtendedReal(math.log(a.value))


def ext_pow(base, exponent) -> ExtendedReal:
    """``base ** exponent`` with the infinite cases of the legal table.

    ``eps ** -inf`` is 0 for ``eps > 1`` and, through ``(1/eps) ** inf``,
    ``+inf`` for ``0 < eps < 1``; ``eps ** inf`` is the mirror image.  A unit
    base under an infinite exponent, ``0 ** 0`` and ``inf ** 0`` are illegal.
    """
    b, x = _ext(base), _ext(exponent)
    if b.value == 0 and x.value == 0:
        raise IllegalForm("0^0")
    if not x.is_finite:
        if not b.is_finite:
            return PLUS_INFINITY if (b.is_plus_infinity and x.is_plus_infinity) else _inf_base_inf_exp(b, x)
        if b.value < 0:
            raise DomainError("negative base under an infinite exponent")
        if b.value == 1:
            raise IllegalForm("1^inf")
        if b.value == 0:
            return ExtendedReal(0.0) if x.is_plus_infinity else PLUS_INFINITY
        grows = (b.value > 1) == x.is_plus_infinity
        return PLUS_INFINITY if grows else ExtendedReal(0.0)
    if not b.is_finite:
        if x.value == 0:
            raise IllegalForm("inf^0")
        if b.is_minus_infinity:
            if not float(x.value).is_integer():
                raise DomainError("non-integer power of -inf")
            if x.value < 0:
                return ExtendedReal(0.0)
            return MINUS_INFINITY if int(x.value) % 2 else PLUS_INFINITY
        return PLUS_INFINITY if x.value > 0 else ExtendedReal(0.0)
    if b.value == 0 and x.value < 0:
        raise IllegalForm("1/0")
    if b.value < 0 and not float(x.value).is_integer():
        raise DomainError("non-integer power of a negative real")
    try:
        return _checked(b.value ** x.value)
    except OverflowError:
        raise InvalidScalar("power overflowed") from None


def _inf_base_inf_exp(b: ExtendedReal, x: ExtendedReal) -> ExtendedReal:
    if b.is_plus_infinity and x.is_minus_infinity:
        return ExtendedReal(0.0)
    raise DomainError("-inf raised to an infinite power")


# --------------------------------------------------------------------------
# standard part


def st(a: Hyper) -> ExtendedReal:
    """Standard part: the real number infinitely close to ``a``, or an infinity."""
    if a.is_zero:
        return ExtendedReal(0.0)
    if a.envelope is not None:
        env = a.envelope
        if _env_is_small(env):
            return ExtendedReal(0.0)
        if _env_is_large(env) and env.sign is not None:
            return PLUS_INFINITY if env.sign > 0 else MINUS_INFINITY
        raise UndeterminedStandardPart((-math.inf, math.inf))
    if a.terms:
        e0, c0 = a.terms[0]
        if e0 < 0:
            if _fuzz_dominated(a):
                raise UndeterminedStandardPart((-math.inf, math.inf))
            return PLUS_INFINITY if c0 > 0 else MINUS_INFINITY
    if a.fuzz is not None and a.fuzz.order < 0:
        raise UndeterminedStandardPart((-math.inf, math.inf))
    if a.prec is not None and a.prec <= 0:
        raise PrecisionExhausted("standard part lies beyond the truncation window")
    center = a.coefficient(0)
    if a.fuzz is not None and a.fuzz.order == 0 and a.fuzz.bound > 0:
        raise UndeterminedStandardPart((center - a.fuzz.bound, center + a.fuzz.bound))
    return ExtendedReal(center)


@dataclass(frozen=True)
class Decomposition:
    standard: float
    infinitesimal_part: Hyper


def decompose(a: Hyper) -> Decomposition:
    """``a = standard + infinitesimal_part`` for a finite ``a``."""
    r = st(a)
    if not r.is_finite:
        raise NotFinite("only finite values have an asymptotic expansion")
    return Decomposition(r.value, sub(a, from_real(r.value, a.window)))

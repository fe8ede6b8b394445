"""Elementary functions extended to :class:`~hyperlim.hyperfield.Hyper` arguments.

Finite arguments ``r + eps`` are expanded as Taylor series about ``r`` (the
coefficients come from closed-form recurrences, never from numerical
differentiation).  Infinitely large arguments follow the boundedness and
growth rules: ``sin`` and ``cos`` become a bounded unknown in ``[-1, 1]``,
``exp`` and ``ln`` become :class:`~hyperlim.hyperfield.Envelope` growth
classes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

from .errors import DomainError, IndeterminateDivisor, IndeterminateSign, PrecisionExhausted
from .hyperfield import (
    INF,
    Envelope,
    Hyper,
    _env_is_large,
    _env_is_small,
    _fuzz_dominated,
    absolute,
    add,
    compose,
    div,
    envelope,
    from_real,
    fuzz,
    mul,
    nth_root,
    one,
    real_pow,
    sign,
    sub,
)

FUNCTION_NAMES = ("sin", "cos", "tan", "exp", "ln", "sqrt", "abs")


@dataclass(frozen=True)
class ElementaryFn:
    name: str
    exponent: Optional[float] = None

    def __post_init__(self):
        if self.name not in FUNCTION_NAMES + ("powconst",):
            raise ValueError(f"unknown elementary function {self.name!r}")
        if (self.name == "powconst") != (self.exponent is not None):
            raise ValueError("only powconst carries an exponent")

    def __str__(self) -> str:
        return f"^{self.exponent!r}" if self.name == "powconst" else self.name

    def in_domain(self, x) -> bool:
        """Whether the function is defined at the extended real ``x``."""
        v = float(x)
        if self.name in ("sin", "cos", "abs"):
            return True
        if self.name == "exp":
            return True
        if self.name == "ln":
            return v > 0
        if self.name == "sqrt":
            return v >= 0
        if self.name == "tan":
            return math.isfinite(v) and abs(math.cos(v)) > 1e-12
        q = self.exponent
        if float(q).is_integer():
            return not (v == 0 and q < 0)
        return v > 0 or (v == 0 and q > 0)

    def real(self, x: float) -> float:
        try:
            if self.name == "sin":
                return math.sin(x)
            if self.name == "cos":
                return math.cos(x)
            if self.name == "tan":
                if abs(math.cos(x)) <= 1e-12:
                    raise DomainError("tan at an odd multiple of pi/2")
                return math.tan(x)
            if self.name == "exp":
                try:
                    return math.exp(x)
                except OverflowError:
                    return math.inf
            if self.name == "ln":
                return math.log(x)
            if self.name == "sqrt":
                return math.sqrt(x)
            if self.name == "abs":
                return abs(x)
            return _real_power(x, self.exponent)
        except ValueError as exc:
            if isinstance(exc, DomainError):
                raise
            raise DomainError(f"{self} undefined at {x!r}") from None

    def derivative(self, x: float) -> float:
        if self.name == "sin":
            return math.cos(x)
        if self.name == "cos":
            return -math.sin(x)
        if self.name == "tan":
            return 1.0 / math.cos(x) ** 2
        if self.name == "exp":
            return math.exp(x)
        if self.name == "ln":
            return 1.0 / x
        if self.name == "sqrt":
            return 0.5 / math.sqrt(x)
        if self.name == "abs":
            if x == 0:
                raise DomainError("abs is not differentiable at 0")
            return math.copysign(1.0, x)
        q = self.exponent
        return q * _real_power(x, q - 1)


SIN = ElementaryFn("sin")
COS = ElementaryFn("cos")
TAN = ElementaryFn("tan")
EXP = ElementaryFn("exp")
LN = ElementaryFn("ln")
SQRT = ElementaryFn("sqrt")
ABS = ElementaryFn("abs")


def powconst(q: float) -> ElementaryFn:
    return ElementaryFn("powconst", float(q))


def by_name(name: str) -> ElementaryFn:
    return ElementaryFn(name)


def _real_power(x: float, q: float) -> float:
    if float(q).is_integer():
        n = int(q)
        if x == 0 and n < 0:
            raise DomainError("zero to a negative power")
        try:
            return float(x) ** n
        except OverflowError:
            return math.copysign(math.inf, x) if n % 2 else math.inf
    if x < 0 or (x == 0 and q < 0):
        raise DomainError(f"{x!r} ** {q!r} is not real")
    try:
        return math.pow(x, q)
    except OverflowError:
        return math.inf


# --------------------------------------------------------------------------
# Taylor coefficients


def _coefficient_fn(f: ElementaryFn, c: float) -> Callable[[int], float]:
    """``k -> f^(k)(c) / k!``."""
    name = f.name
    if name == "exp":
        ec = math.exp(c)
        return lambda k: ec * _inv_factorial(k)
    if name in ("sin", "cos"):
        s, co = math.sin(c), math.cos(c)
        cycle = (s, co, -s, -co) if name == "sin" else (co, -s, -co, s)
        return lambda k: cycle[k % 4] * _inv_factorial(k)
    if name == "ln":
        if c <= 0:
            raise DomainError("ln is analytic only at positive points")
        lc = math.log(c)
        return lambda k: lc if k == 0 else (-1.0) ** (k + 1) / (k * c**k)
    if name == "abs":
        if c == 0:
            raise DomainError("abs is not analytic at 0")
        return lambda k: abs(c) if k == 0 else (math.copysign(1.0, c) if k == 1 else 0.0)
    if name == "tan":
        return _tan_coefficients(c)
    q = 0.5 if name == "sqrt" else f.exponent
    if not float(q).is_integer() and c <= 0:
        raise DomainError(f"{f} is analytic only at positive points")
    if c == 0:
        n = int(q)
        if n < 0:
            raise DomainError("negative power is not analytic at 0")
        return lambda k: 1.0 if k == n else 0.0
    cache = [_real_power(c, q)]

    def binomial(k: int) -> float:
        while len(cache) <= k:
            j = len(cache)
            cache.append(cache[-1] * (q - j + 1) / (j * c))
        return cache[k]

    return binomial


def _inv_factorial(k: int) -> float:
    return 1.0 / math.factorial(k) if k <= 170 else 0.0


def _tan_coefficients(c: float) -> Callable[[int], float]:
    if abs(math.cos(c)) <= 1e-12:
        raise DomainError("tan at an odd multiple of pi/2")
    s = _coefficient_fn(SIN, c)
    co = _coefficient_fn(COS, c)
    cache: list = []

    def coefficient(k: int) -> float:
        while len(cache) <= k:
            j = len(cache)
            acc = s(j) - sum(co(i) * cache[j - i] for i in range(1, j + 1))
            cache.append(acc / co(0))
        return cache[k]

    return coefficient


def taylor_coefficients(f: ElementaryFn, center: float, count: int) -> list:
    """``[f(center), f'(center), f''(center)/2, ...]`` with ``count`` entries."""
    if count < 1:
        raise ValueError("count must be at least 1")
    coefficient = _coefficient_fn(f, float(center))
    return [coefficient(k) for k in range(count)]


# --------------------------------------------------------------------------
# lifting


def lift(f: ElementaryFn, a: Hyper) -> Hyper:
    name = f.name
    if name == "abs":
        return absolute(a)
    if name == "sqrt":
        return nth_root(a, 2)
    if name == "powconst":
        return real_pow(a, f.exponent)
    if name == "tan":
        return _tan(a)
    if a.is_zero:
        if name == "ln":
            raise DomainError("ln of zero")
        return from_real(f.real(0.0), a.window)
    if a.envelope is not None:
        return _lift_envelope(f, a)
    if _infinitely_large_or_unknown(a):
        return _lift_unbounded(f, a)
    return _lift_finite(f, a)


def _tan(a: Hyper) -> Hyper:
    finite_center = a.envelope is None and not _infinitely_large_or_unknown(a)
    if finite_center and abs(math.cos(a.coefficient(0))) <= 1e-12:
        raise DomainError("tan at an odd multiple of pi/2")
    try:
        return div(lift(SIN, a), lift(COS, a))
    except IndeterminateDivisor:
        raise DomainError("tan of an argument with unknown cosine") from None


def _infinitely_large_or_unknown(a: Hyper) -> bool:
    if a.terms and a.terms[0][0] < 0:
        return True
    return a.fuzz is not None and a.fuzz.order < 0


def _lift_unbounded(f: ElementaryFn, a: Hyper) -> Hyper:
    w = a.window
    if f.name in ("sin", "cos"):
        return fuzz(0, 1.0, w)
    if _fuzz_dominated(a) or not a.terms:
        raise IndeterminateSign(f"{f} of an infinitely large value of unknown sign")
    positive = a.terms[0][1] > 0
    if f.name == "exp":
        if positive:
            return envelope(Envelope(1, -INF, -INF, "slack", "big"), w)
        return envelope(Envelope(1, INF, INF, "small", "slack"), w)
    if f.name == "ln":
        if not positive:
            raise DomainError("ln of a negative infinitely large value")
        return envelope(Envelope(1, 0, 0, "slack", "big"), w)
    raise DomainError(f"{f} at an infinitely large argument")


def _lift_envelope(f: ElementaryFn, a: Hyper) -> Hyper:
    env, w = a.envelope, a.window
    if _env_is_large(env):
        if f.name in ("sin", "cos"):
            return fuzz(0, 1.0, w)
        if env.sign is None:
            if f.name == "exp":
                return envelope(Envelope(1, -INF, INF, "slack", "slack"), w)
            raise IndeterminateSign(f"{f} of an infinitely large value of unknown sign")
        if f.name == "exp":
            polynomial = env.hi < 0
            if env.sign > 0:
                return envelope(Envelope(1, -INF, -INF if polynomial else 0, "slack", "big"), w)
            return envelope(Envelope(1, INF if polynomial else 0, INF, "small", "slack"), w)
        if f.name == "ln":
            if env.sign < 0:
                raise DomainError("ln of a negative infinitely large value")
            return envelope(Envelope(1, 0 if env.lo > -INF else -INF, 0, "slack", "big"), w)
    if _env_is_small(env):
        if f.name == "sin":
            return a
        if f.name == "exp":
            return add(one(w), a)
        if f.name == "cos":
            return sub(one(w), mul(a, a))
        if f.name == "ln":
            if env.sign is None:
                raise IndeterminateSign("ln of an infinitesimal of unknown sign")
            if env.sign < 0:
                raise DomainError("ln of a negative value")
            return envelope(Envelope(-1, 0 if env.hi < INF else -INF, 0, "slack", "big"), w)
    if f.name in ("sin", "cos"):
        return fuzz(0, 1.0, w)
    raise IndeterminateSign(f"{f} of a value of undetermined growth")


def _lift_finite(f: ElementaryFn, a: Hyper) -> Hyper:
    w = a.window
    if a.fuzz is not None and a.fuzz.order == 0 and a.fuzz.bound > 0:
        center = a.coefficient(0)
        lo, hi = _image(f, center - a.fuzz.bound, center + a.fuzz.bound)
        return add(from_real((lo + hi) / 2, w), fuzz(0, (hi - lo) / 2, w))
    if not a.terms and a.fuzz is None and a.prec <= 0:
        raise PrecisionExhausted("argument is lost beyond the truncation window")
    r = a.coefficient(0)
    eps = sub(a, from_real(r, w))
    if f.name == "ln" and r == 0:
        if sign(a) < 0:
            raise DomainError("ln of a negative value")
        return envelope(Envelope(-1, 0, 0, "slack", "big"), w)
    if not f.in_domain(r):
        raise DomainError(f"{f} undefined at standard part {r!r}")
    return compose(_coefficient_fn(f, r), eps)


def _image(f: ElementaryFn, lo: float, hi: float):
    """Range of the real function over ``[lo, hi]``."""
    if f.name == "exp":
        return math.exp(lo), math.exp(hi)
    if f.name == "ln":
        if lo <= 0:
            raise IndeterminateSign("ln of a value that may be non-positive")
        return math.log(lo), math.log(hi)
    if f.name in ("sin", "cos"):
        g = math.sin if f.name == "sin" else math.cos
        vals = [g(lo), g(hi)]
        k = math.ceil(lo / (math.pi / 2))
        while k * math.pi / 2 <= hi and len(vals) < 8:
            vals.append(g(k * math.pi / 2))
            k += 1
        return min(vals), max(vals)
    raise IndeterminateSign(f"{f} of a bounded unknown")


__all__ = [
    "ABS",
    "COS",
    "EXP",
    "ElementaryFn",
    "LN",
    "SIN",
    "SQRT",
    "TAN",
    "by_name",
    "lift",
    "powconst",
    "taylor_coefficients",
]

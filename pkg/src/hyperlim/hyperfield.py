"""Truncated Puiseux series in a positive infinitesimal ``t``.

A :class:`Hyper` is a finite list of terms ``c * t**e`` (``e`` an exact
rational, ``c`` a float) followed by at most one remainder:

* an ``O(t**p)`` truncation tail (``PuiseuxSeries.prec``): every coefficient
  at or beyond ``p`` is unknown;
* a :class:`Fuzz` ``B * t**order`` where ``B`` is an unknown number whose
  standard part lies in ``[-bound, bound]`` (bounded oscillation such as
  ``sin(1/t)``).  A bound of exactly zero means ``B`` is infinitesimal, i.e.
  the remainder is ``o(t**order)``.

Values that no finite Puiseux expansion can describe (``ln(1/t)``,
``exp(1/t)``) are carried as an :class:`Envelope`: a sign and a pair of
exponent bounds on the magnitude.  Only their order of magnitude survives
arithmetic.

Terms are kept only within ``window`` of the leading exponent; anything
further away becomes an ``O`` tail.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Iterable, Optional, Union

from .errors import (
    DivisionByZero,
    DomainError,
    IllegalForm,
    IndeterminateClass,
    IndeterminateDivisor,
    IndeterminateSign,
    InvalidScalar,
    PrecisionExhausted,
)

ZERO_TOLERANCE = 1e-12
DEFAULT_WINDOW = Fraction(8)
MAX_DENOMINATOR = 10**6
MAX_NUMERATOR = 10**12

INF = math.inf

Exponent = Fraction
Number = Union["Hyper", float, int]


def exponent(value) -> Fraction:
    """Exact rational exponent, rejecting ones too large to track."""
    q = value if isinstance(value, Fraction) else Fraction(value)
    if q.denominator > MAX_DENOMINATOR or abs(q.numerator) > MAX_NUMERATOR:
        raise PrecisionExhausted(f"exponent {q} exceeds the tracked range")
    return q


def _finite(c) -> float:
    c = float(c)
    if not math.isfinite(c):
        raise InvalidScalar(f"non-finite scalar {c!r}")
    return c


def _min_opt(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


@dataclass(frozen=True)
class PuiseuxSeries:
    terms: tuple = ()
    window: Fraction = DEFAULT_WINDOW
    prec: Optional[Fraction] = None

    @property
    def lead(self) -> Optional[Fraction]:
        return self.terms[0][0] if self.terms else None

    def coefficient(self, e) -> float:
        e = Fraction(e)
        for ee, c in self.terms:
            if ee == e:
                return c
        return 0.0


@dataclass(frozen=True)
class Fuzz:
    order: Fraction
    bound: float


@dataclass(frozen=True)
class Envelope:
    """Magnitude class ``t**hi <~ |v| <~ t**lo`` with an optional sign.

    ``upper`` qualifies the bound at ``lo``: ``"const"`` means
    ``|v| <= C t**lo``, ``"small"`` means ``|v| << t**lo`` and ``"slack"``
    only ``|v| <= t**(lo - p)`` for every real ``p > 0``.  ``lower`` qualifies
    ``hi`` the same way (``"const"``, ``"big"`` for ``>>``, ``"slack"``).
    ``hi = +inf`` means no lower bound at all.
    """

    sign: Optional[int]
    lo: object
    hi: object
    upper: str = "const"
    lower: str = "const"


@dataclass(frozen=True)
class NumClass:
    is_infinitesimal: bool
    is_finite: bool
    is_infinitely_large: bool


@dataclass(frozen=True)
class Hyper:
    series: PuiseuxSeries = field(default_factory=PuiseuxSeries)
    fuzz: Optional[Fuzz] = None
    envelope: Optional[Envelope] = None

    @property
    def terms(self) -> tuple:
        return self.series.terms

    @property
    def window(self) -> Fraction:
        return self.series.window

    @property
    def prec(self) -> Optional[Fraction]:
        return self.series.prec

    @property
    def is_zero(self) -> bool:
        """True only for an exact zero (no terms, no remainder)."""
        return (
            not self.series.terms
            and self.series.prec is None
            and self.fuzz is None
            and self.envelope is None
        )

    def coefficient(self, e) -> float:
        return self.series.coefficient(e)

    def with_window(self, window) -> "Hyper":
        window = exponent(window)
        if self.envelope is not None:
            return replace(self, series=PuiseuxSeries((), window))
        return _normalize(self.terms, window, self.prec, self.fuzz)

    def _coerce(self, other) -> "Hyper":
        if isinstance(other, Hyper):
            return other
        return from_real(other, self.window)

    def __add__(self, other):
        return add(self, self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return sub(self, self._coerce(other))

    def __rsub__(self, other):
        return sub(self._coerce(other), self)

    def __mul__(self, other):
        return mul(self, self._coerce(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return div(self, self._coerce(other))

    def __rtruediv__(self, other):
        return div(self._coerce(other), self)

    def __neg__(self):
        return neg(self)

    def __pos__(self):
        return self

    def __abs__(self):
        return absolute(self)

    def __pow__(self, n):
        if isinstance(n, int):
            return int_pow(self, n)
        return NotImplemented

    def __lt__(self, other):
        return compare(self, self._coerce(other)) < 0

    def __le__(self, other):
        return compare(self, self._coerce(other)) <= 0

    def __gt__(self, other):
        return compare(self, self._coerce(other)) > 0

    def __ge__(self, other):
        return compare(self, self._coerce(other)) >= 0

    def __str__(self) -> str:
        return format_hyper(self)


# --------------------------------------------------------------------------
# construction and normal form


def _normalize(terms: Iterable, window: Fraction, prec=None, fuzz: Optional[Fuzz] = None) -> Hyper:
    items = sorted((exponent(e), float(c)) for e, c in terms if c != 0.0)
    if prec is not None:
        prec = exponent(prec)
    if fuzz is not None:
        fuzz = Fuzz(exponent(fuzz.order), float(fuzz.bound))
        if prec is not None and prec <= fuzz.order:
            fuzz = None
        else:
            prec = None
            items = [(e, c) for e, c in items if e <= fuzz.order]
    if prec is not None:
        items = [(e, c) for e, c in items if e < prec]
    if items:
        cutoff = items[0][0] + window
        if fuzz is not None and fuzz.order >= cutoff:
            fuzz = None
            prec = cutoff
        if (prec is not None and prec > cutoff) or items[-1][0] >= cutoff:
            prec = cutoff
        if prec is not None:
            items = [(e, c) for e, c in items if e < prec]
    return Hyper(PuiseuxSeries(tuple(items), window, prec), fuzz)


def from_real(c, window=DEFAULT_WINDOW) -> Hyper:
    c = _finite(c)
    window = exponent(window)
    if c == 0.0:
        return Hyper(PuiseuxSeries((), window))
    return Hyper(PuiseuxSeries(((Fraction(0), c),), window))


def dx(window=DEFAULT_WINDOW) -> Hyper:
    """The canonical positive infinitesimal ``t``."""
    return monomial(1.0, 1, window)


def monomial(c, e, window=DEFAULT_WINDOW) -> Hyper:
    c = _finite(c)
    window = exponent(window)
    if c == 0.0:
        return Hyper(PuiseuxSeries((), window))
    return Hyper(PuiseuxSeries(((exponent(e), c),), window))


def from_terms(terms: Iterable, window=DEFAULT_WINDOW, prec=None, fuzz: Optional[Fuzz] = None) -> Hyper:
    """Build a normalized value from ``(exponent, coefficient)`` pairs.

    Pairs sharing an exponent are summed.
    """
    merged: dict = {}
    for e, c in terms:
        e = exponent(e)
        merged[e] = merged.get(e, 0.0) + _finite(c)
    return _normalize(merged.items(), exponent(window), prec, fuzz)


def fuzz(order, bound, window=DEFAULT_WINDOW) -> Hyper:
    """A bounded unknown ``B * t**order`` with ``st(B)`` in ``[-bound, bound]``."""
    if bound < 0:
        raise InvalidScalar("fuzz bound must be nonnegative")
    return Hyper(PuiseuxSeries((), exponent(window)), Fuzz(exponent(order), _finite(bound)))


def big_o(order, window=DEFAULT_WINDOW) -> Hyper:
    """An unknown quantity of order ``t**order``."""
    return Hyper(PuiseuxSeries((), exponent(window), exponent(order)))


def envelope(env: Envelope, window=DEFAULT_WINDOW) -> Hyper:
    return Hyper(PuiseuxSeries((), exponent(window)), None, env)


def zero(window=DEFAULT_WINDOW) -> Hyper:
    return Hyper(PuiseuxSeries((), exponent(window)))


def one(window=DEFAULT_WINDOW) -> Hyper:
    return from_real(1.0, window)


# --------------------------------------------------------------------------
# magnitude descriptors (used whenever an Envelope takes part)

_UPPER_RANK = {"small": 0, "const": 1, "slack": 2}
_LOWER_RANK = {"big": 0, "const": 1, "slack": 2}


def _fuzz_dominated(h: Hyper) -> bool:
    if not h.terms or h.fuzz is None:
        return False
    e0, c0 = h.terms[0]
    return h.fuzz.order == e0 and abs(c0) <= h.fuzz.bound


def _as_envelope(h: Hyper) -> Envelope:
    if h.envelope is not None:
        return h.envelope
    if h.terms:
        e0, c0 = h.terms[0]
        if _fuzz_dominated(h):
            return Envelope(None, e0, INF, "const", "slack")
        return Envelope(1 if c0 > 0 else -1, e0, e0, "const", "const")
    if h.fuzz is not None:
        return Envelope(None, h.fuzz.order, INF, "small" if h.fuzz.bound == 0 else "const", "slack")
    return Envelope(None, h.prec, INF, "const", "slack")


def _exp_sum(a, b, unknown):
    s = a + b
    return unknown if s != s else s


def _dominates(a: Envelope, b: Envelope) -> bool:
    """|a| is infinitely larger than |b|."""
    if a.hi < b.lo:
        return True
    if a.hi == b.lo and math.isfinite(a.hi):
        if a.lower == "big" and b.upper in ("const", "small"):
            return True
        if a.lower == "const" and b.upper == "small":
            return True
    return False


def _env_mul(a: Envelope, b: Envelope) -> Envelope:
    sign = a.sign * b.sign if a.sign is not None and b.sign is not None else None
    lo = _exp_sum(a.lo, b.lo, -INF)
    hi = _exp_sum(a.hi, b.hi, INF)
    uppers = {a.upper, b.upper}
    upper = "slack" if "slack" in uppers else ("small" if "small" in uppers else "const")
    lowers = {a.lower, b.lower}
    lower = "slack" if "slack" in lowers else ("big" if "big" in lowers else "const")
    return Envelope(sign, lo, hi, upper, lower)


def _env_inv(a: Envelope) -> Envelope:
    if a.hi == INF:
        raise IndeterminateDivisor("divisor magnitude has no lower bound")
    upper = {"const": "const", "big": "small", "slack": "slack"}[a.lower]
    lower = {"const": "const", "small": "big", "slack": "slack"}[a.upper]
    return Envelope(a.sign, -a.hi, -a.lo, upper, lower)


def _env_is_large(a: Envelope) -> bool:
    return a.hi < 0 or (a.hi == 0 and a.lower == "big")


def _env_is_small(a: Envelope) -> bool:
    return a.lo > 0 or (a.lo == 0 and a.upper == "small")


def _env_is_finite(a: Envelope) -> bool:
    return a.lo > 0 or (a.lo == 0 and a.upper in ("const", "small"))


def _env_tail(env: Envelope, series: Hyper) -> Hyper:
    """The dominated envelope ``env`` folded into ``series`` as a remainder."""
    w = series.window
    if env.lo == INF:
        lead = series.terms[0][0] if series.terms else None
        if lead is None:
            return series
        return _normalize(series.terms, w, _min_opt(series.prec, lead + w), series.fuzz)
    if env.upper == "small":
        tail = Fuzz(exponent(env.lo), 0.0)
        return _normalize(series.terms, w, series.prec, _fuzz_add(series.fuzz, tail))
    return _normalize(series.terms, w, _min_opt(series.prec, exponent(env.lo)), series.fuzz)


def _add_envelopes(a: Hyper, b: Hyper) -> Hyper:
    w = min(a.window, b.window)
    if a.is_zero:
        return b.with_window(w) if b.envelope is None else envelope(b.envelope, w)
    if b.is_zero:
        return a.with_window(w) if a.envelope is None else envelope(a.envelope, w)
    ea, eb = _as_envelope(a), _as_envelope(b)
    if _dominates(ea, eb):
        return envelope(ea, w) if a.envelope is not None else _env_tail(eb, a.with_window(w))
    if _dominates(eb, ea):
        return envelope(eb, w) if b.envelope is not None else _env_tail(ea, b.with_window(w))
    if ea.sign is not None and ea.sign == eb.sign:
        if ea.hi < eb.hi or (ea.hi == eb.hi and _LOWER_RANK[ea.lower] <= _LOWER_RANK[eb.lower]):
            hi, lower = ea.hi, ea.lower
        else:
            hi, lower = eb.hi, eb.lower
        sign = ea.sign
    else:
        hi, lower, sign = INF, "slack", None
    if ea.lo < eb.lo or (ea.lo == eb.lo and _UPPER_RANK[ea.upper] >= _UPPER_RANK[eb.upper]):
        lo, upper = ea.lo, ea.upper
    else:
        lo, upper = eb.lo, eb.upper
    return envelope(Envelope(sign, lo, hi, upper, lower), w)


# --------------------------------------------------------------------------
# field operations


def _fuzz_add(f: Optional[Fuzz], g: Optional[Fuzz]) -> Optional[Fuzz]:
    if f is None:
        return g
    if g is None:
        return f
    return Fuzz(min(f.order, g.order), f.bound + g.bound)


def add(a: Hyper, b: Hyper) -> Hyper:
    if a.envelope is not None or b.envelope is not None:
        return _add_envelopes(a, b)
    window = min(a.window, b.window)
    sums: dict = {}
    scale: dict = {}
    for e, c in a.terms + b.terms:
        sums[e] = sums.get(e, 0.0) + c
        scale[e] = max(scale.get(e, 0.0), abs(c))
    terms = [(e, s) for e, s in sums.items() if abs(s) > ZERO_TOLERANCE * scale[e]]
    return _normalize(terms, window, _min_opt(a.prec, b.prec), _fuzz_add(a.fuzz, b.fuzz))


def neg(a: Hyper) -> Hyper:
    if a.envelope is not None:
        env = a.envelope
        return replace(a, envelope=replace(env, sign=None if env.sign is None else -env.sign))
    return Hyper(PuiseuxSeries(tuple((e, -c) for e, c in a.terms), a.window, a.prec), a.fuzz)


def sub(a: Hyper, b: Hyper) -> Hyper:
    return add(a, neg(b))


def scale(a: Hyper, c: float, shift=0) -> Hyper:
    """``c * t**shift * a``, exactly."""
    c = _finite(c)
    shift = exponent(shift)
    if c == 0.0:
        return zero(a.window)
    if a.envelope is not None:
        return envelope(_env_mul(a.envelope, Envelope(1 if c > 0 else -1, shift, shift)), a.window)
    terms = tuple((exponent(e + shift), c * v) for e, v in a.terms)
    prec = None if a.prec is None else exponent(a.prec + shift)
    fz = None if a.fuzz is None else Fuzz(exponent(a.fuzz.order + shift), a.fuzz.bound * abs(c))
    return Hyper(PuiseuxSeries(terms, a.window, prec), fz)


def mul(a: Hyper, b: Hyper) -> Hyper:
    window = min(a.window, b.window)
    if a.is_zero or b.is_zero:
        return zero(window)
    if a.envelope is not None or b.envelope is not None:
        return envelope(_env_mul(_as_envelope(a), _as_envelope(b)), window)
    sums: dict = {}
    mags: dict = {}
    limit = None
    dropped = False
    if a.terms and b.terms:
        limit = a.terms[0][0] + b.terms[0][0] + window
    for ea, ca in a.terms:
        for eb, cb in b.terms:
            e = ea + eb
            if limit is not None and e > limit:
                dropped = True
                continue
            p = ca * cb
            sums[e] = sums.get(e, 0.0) + p
            mags[e] = mags.get(e, 0.0) + abs(p)
    terms = [(e, s) for e, s in sums.items() if abs(s) > ZERO_TOLERANCE * mags[e]]

    prec = limit if dropped else None
    fz = None
    if a.terms and (b.prec is not None or b.fuzz is not None):
        lead = a.terms[0][0]
        if b.prec is not None:
            prec = _min_opt(prec, lead + b.prec)
        else:
            weight = sum(abs(c) for _, c in a.terms)
            fz = _fuzz_add(fz, Fuzz(lead + b.fuzz.order, b.fuzz.bound * weight))
    if b.terms and (a.prec is not None or a.fuzz is not None):
        lead = b.terms[0][0]
        if a.prec is not None:
            prec = _min_opt(prec, lead + a.prec)
        else:
            weight = sum(abs(c) for _, c in b.terms)
            fz = _fuzz_add(fz, Fuzz(lead + a.fuzz.order, a.fuzz.bound * weight))
    ra = a.prec if a.prec is not None else (a.fuzz.order if a.fuzz is not None else None)
    rb = b.prec if b.prec is not None else (b.fuzz.order if b.fuzz is not None else None)
    if ra is not None and rb is not None:
        if a.fuzz is not None and b.fuzz is not None:
            fz = _fuzz_add(fz, Fuzz(ra + rb, a.fuzz.bound * b.fuzz.bound))
        else:
            prec = _min_opt(prec, ra + rb)
    return _normalize(terms, window, prec, fz)


def _split_leading(b: Hyper):
    """Write ``b = c0 t**e0 (1 + u)`` with ``u`` infinitesimal."""
    e0, c0 = b.terms[0]
    u = scale(Hyper(PuiseuxSeries(b.terms[1:], b.window, b.prec), b.fuzz), 1.0 / c0, -e0)
    return e0, c0, _normalize(u.terms, b.window, u.prec, u.fuzz)


def _order(u: Hyper) -> Fraction:
    if u.terms:
        return u.terms[0][0]
    if u.fuzz is not None:
        return u.fuzz.order
    return u.prec


def compose(coefficient: Callable[[int], float], u: Hyper, extra: int = 2) -> Hyper:
    """Evaluate ``sum_k coefficient(k) * u**k`` for an infinitesimal ``u``.

    The sum is cut where the powers of ``u`` leave the window and the omitted
    tail is recorded as an ``O`` remainder.
    """
    window = u.window
    c0 = coefficient(0)
    if u.is_zero:
        return from_real(c0, window)
    ord_u = _order(u)
    if ord_u <= 0:
        raise PrecisionExhausted("series argument is not infinitesimal")
    depth = math.ceil(window / ord_u) + extra
    result = from_real(c0, window)
    power = one(window)
    for k in range(1, depth + 1):
        power = mul(power, u)
        if power.is_zero:
            break
        ck = coefficient(k)
        if not math.isfinite(ck):
            raise PrecisionExhausted("series coefficient overflow")
        if ck != 0.0:
            result = add(result, scale(power, ck))
    return add(result, big_o(exponent((depth + 1) * ord_u), window))


def inv(b: Hyper) -> Hyper:
    if b.is_zero:
        raise DivisionByZero("division by exact zero")
    if b.envelope is not None:
        return envelope(_env_inv(b.envelope), b.window)
    if not b.terms:
        if b.fuzz is not None:
            raise IndeterminateDivisor("divisor is a bounded unknown")
        raise PrecisionExhausted("divisor vanished within the window")
    if b.fuzz is not None and b.fuzz.order == b.terms[0][0]:
        raise IndeterminateDivisor("divisor's leading term carries an unknown part")
    e0, c0, u = _split_leading(b)
    geometric = compose(lambda k: -1.0 if k % 2 else 1.0, u)
    return scale(geometric, 1.0 / c0, -e0)


def div(a: Hyper, b: Hyper) -> Hyper:
    return mul(a, inv(b))


def int_pow(a: Hyper, n: int) -> Hyper:
    if n == 0:
        if a.is_zero:
            raise IllegalForm("0^0")
        return one(a.window)
    if n < 0:
        return inv(int_pow(a, -n))
    result = None
    base = a
    while n:
        if n & 1:
            result = base if result is None else mul(result, base)
        n >>= 1
        if n:
            base = mul(base, base)
    return result


def _binomial(q: float) -> Callable[[int], float]:
    cache = [1.0]

    def coefficient(k: int) -> float:
        while len(cache) <= k:
            j = len(cache)
            cache.append(cache[-1] * (q - j + 1) / j)
        return cache[k]

    return coefficient


def nth_root(a: Hyper, n: int) -> Hyper:
    if n < 1:
        raise DomainError("root index must be a positive integer")
    if n == 1 or a.is_zero:
        return a
    if a.envelope is not None:
        env = a.envelope
        if env.sign is None:
            raise IndeterminateSign("root of a value of unknown sign")
        if env.sign < 0 and n % 2 == 0:
            raise DomainError("even root of a negative value")
        return envelope(Envelope(env.sign, env.lo / n, env.hi / n, env.upper, env.lower), a.window)
    if not a.terms:
        if a.fuzz is not None and n % 2 == 1:
            return fuzz(a.fuzz.order / n, a.fuzz.bound ** (1.0 / n), a.window)
        if a.fuzz is not None:
            raise IndeterminateSign("even root of a bounded unknown")
        raise PrecisionExhausted("root argument vanished within the window")
    if a.fuzz is not None and a.fuzz.order == a.terms[0][0]:
        raise IndeterminateSign("root argument's leading term carries an unknown part")
    e0, c0, u = _split_leading(a)
    if c0 < 0 and n % 2 == 0:
        raise DomainError("even root of a negative value")
    lead = math.copysign(abs(c0) ** (1.0 / n), c0)
    return scale(compose(_binomial(1.0 / n), u), lead, exponent(e0 / n))


def real_pow(a: Hyper, q: float) -> Hyper:
    """``a**q`` on the principal real branch, ``a`` positive.

    For ``a`` infinitesimal or infinitely large the exponent of the leading
    power of ``t`` must be rational, so ``q`` is rationalized.
    """
    q = _finite(q)
    if float(q).is_integer():
        return int_pow(a, int(q))
    if a.is_zero:
        if q > 0:
            return a
        raise DivisionByZero("zero to a negative power")
    if a.envelope is not None:
        env = a.envelope
        if env.sign != 1:
            raise DomainError("non-integer power of a value not known positive")
        qf = _rational(q)
        lo, hi = env.lo * qf, env.hi * qf
        if qf < 0:
            lo, hi = hi, lo
            upper = {"const": "const", "big": "small", "slack": "slack"}[env.lower]
            lower = {"const": "const", "small": "big", "slack": "slack"}[env.upper]
        else:
            upper, lower = env.upper, env.lower
        if hi != hi:
            hi = INF
        return envelope(Envelope(1, lo, hi, upper, lower), a.window)
    s = sign(a)
    if s <= 0:
        raise DomainError("non-integer power of a non-positive value")
    if a.fuzz is not None and a.fuzz.order == a.terms[0][0]:
        raise IndeterminateSign("power base's leading term carries an unknown part")
    e0, c0, u = _split_leading(a)
    shift = exponent(e0 * _rational(q)) if e0 != 0 else Fraction(0)
    return scale(compose(_binomial(q), u), c0 ** q, shift)


def _rational(q: float) -> Fraction:
    f = Fraction(q).limit_denominator(10**4)
    if abs(float(f) - q) > 1e-12 * max(1.0, abs(q)):
        raise DomainError(f"exponent {q!r} is not a manageable rational")
    return f


# --------------------------------------------------------------------------
# order and classification


def sign(a: Hyper) -> int:
    if a.is_zero:
        return 0
    if a.envelope is not None:
        if a.envelope.sign is None:
            raise IndeterminateSign("sign of an envelope with unknown sign")
        return a.envelope.sign
    if not a.terms:
        if a.fuzz is not None:
            raise IndeterminateSign("sign of a bounded unknown")
        raise PrecisionExhausted("value vanished within the window")
    if _fuzz_dominated(a):
        raise IndeterminateSign("leading term dominated by a bounded unknown")
    return 1 if a.terms[0][1] > 0 else -1


def absolute(a: Hyper) -> Hyper:
    return neg(a) if sign(a) < 0 else a


def compare(a: Hyper, b: Hyper) -> int:
    """-1, 0 or 1 as ``a`` is less than, equal to or greater than ``b``."""
    return sign(sub(a, b))


def classify(a: Hyper) -> NumClass:
    if a.is_zero:
        return NumClass(True, True, False)
    if a.envelope is not None:
        env = a.envelope
        if _env_is_large(env):
            return NumClass(False, False, True)
        if _env_is_small(env):
            return NumClass(True, True, False)
        if _env_is_finite(env) and env.hi == 0 and env.lower in ("const", "big"):
            return NumClass(False, True, False)
        raise IndeterminateClass("growth class of envelope undetermined")
    if not a.terms:
        order = a.fuzz.order if a.fuzz is not None else a.prec
        if order > 0:
            return NumClass(True, True, False)
        raise IndeterminateClass("remainder dominates at a non-positive order")
    e0 = a.terms[0][0]
    if _fuzz_dominated(a) and e0 <= 0:
        raise IndeterminateClass("leading behaviour is a bounded unknown")
    if e0 > 0:
        return NumClass(True, True, False)
    if e0 == 0:
        return NumClass(False, True, False)
    return NumClass(False, False, True)


# --------------------------------------------------------------------------
# text form


def _fmt_coef(c: float) -> str:
    return f"{c:.12g}"


def _fmt_power(e) -> str:
    if e == 1:
        return "dx"
    if isinstance(e, Fraction) and e.denominator == 1 and e > 0:
        return f"dx^{e.numerator}"
    return f"dx^({e})"


def format_hyper(a: Hyper) -> str:
    """``c0 + c1*dx^(p/q) + ... [+ O~(dx^r)·[-B,B]]`` with exponents ascending."""
    if a.envelope is not None:
        env = a.envelope
        s = {1: "+", -1: "-", None: "±"}[env.sign]
        return f"{s}Scale(dx^[{env.lo}, {env.hi}], upper={env.upper}, lower={env.lower})"
    parts = []
    for e, c in a.terms:
        mag = _fmt_coef(abs(c))
        body = mag if e == 0 else f"{mag}*{_fmt_power(e)}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    if a.fuzz is not None:
        b = _fmt_coef(a.fuzz.bound)
        parts.append(f"+ O~({_fmt_power(a.fuzz.order) if a.fuzz.order != 0 else 'dx^0'})·[-{b},{b}]")
    if a.prec is not None:
        parts.append(f"+ O({_fmt_power(a.prec) if a.prec != 0 else 'dx^0'})")
    if not parts:
        return "0"
    text = " ".join(parts)
    return text[2:] if text.startswith("+ ") else text

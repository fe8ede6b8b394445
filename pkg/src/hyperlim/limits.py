"""Limits as standard parts, plus the numeric sampling oracle and the
interpolation counterexample for the "finitely many samples never decide a
limit" lemma.

A finite target ``r`` is approached by substituting ``x = r + t`` or
``x = r - t`` for the positive infinitesimal ``t``; the infinite targets use
``x = 1/t`` and ``x = -1/t``.  The limit is the standard part of the result.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Callable, Optional, Sequence, Tuple, Union

import numpy as np

from .errors import (
    DomainError,
    HyperlimError,
    IllegalForm,
    IndeterminateClass,
    IndeterminateDivisor,
    IndeterminateSign,
    InvalidInput,
    NumericalFailure,
    PrecisionExhausted,
    UndeterminedStandardPart,
)
from .expr import Binary, Constant, Expr, Variable, eval_hyper, eval_real, parse
from .extreal import MINUS_INFINITY, PLUS_INFINITY, ExtendedReal, format_ext, parse_ext, st
from .hyperfield import DEFAULT_WINDOW, Hyper, div, exponent, from_real, monomial, sub

DEFAULT_TOLERANCE = 1e-9

TWO_SIDED = "two_sided"
FROM_RIGHT = "right"
FROM_LEFT = "left"
TO_PLUS_INFINITY = "+inf"
TO_MINUS_INFINITY = "-inf"
_KINDS = (TWO_SIDED, FROM_RIGHT, FROM_LEFT, TO_PLUS_INFINITY, TO_MINUS_INFINITY)


@dataclass(frozen=True)
class LimitTarget:
    kind: str
    point: Optional[float] = None

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown target kind {self.kind!r}")
        finite_kind = self.kind in (TWO_SIDED, FROM_RIGHT, FROM_LEFT)
        if finite_kind != (self.point is not None):
            raise ValueError("finite targets need a point, infinite targets none")
        if finite_kind and not math.isfinite(self.point):
            raise ValueError("target point must be finite")

    @classmethod
    def two_sided(cls, r: float) -> "LimitTarget":
        return cls(TWO_SIDED, float(r))

    @classmethod
    def from_right(cls, r: float) -> "LimitTarget":
        return cls(FROM_RIGHT, float(r))

    @classmethod
    def from_left(cls, r: float) -> "LimitTarget":
        return cls(FROM_LEFT, float(r))

    @classmethod
    def plus_infinity(cls) -> "LimitTarget":
        return cls(TO_PLUS_INFINITY)

    @classmethod
    def minus_infinity(cls) -> "LimitTarget":
        return cls(TO_MINUS_INFINITY)

    @property
    def is_one_sided(self) -> bool:
        return self.kind != TWO_SIDED

    def __str__(self) -> str:
        if self.kind == TO_PLUS_INFINITY:
            return "x->+inf"
        if self.kind == TO_MINUS_INFINITY:
            return "x->-inf"
        suffix = {TWO_SIDED: "", FROM_RIGHT: "+", FROM_LEFT: "-"}[self.kind]
        return f"x->{self.point!r}{suffix}"


def parse_target(text: str, variable: str = "x") -> LimitTarget:
    """Read ``x->r``, ``x->r+``, ``x->r-``, ``x->+inf`` or ``x->-inf``.

    A bare point (``1``, ``0+``) without the ``x->`` prefix is accepted too.
    """
    s = text.strip().replace(" ", "")
    prefix = f"{variable}->"
    if s.startswith(prefix):
        s = s[len(prefix):]
    if s in ("+inf", "inf"):
        return LimitTarget.plus_infinity()
    if s == "-inf":
        return LimitTarget.minus_infinity()
    kind = TWO_SIDED
    if len(s) > 1 and s[-1] in "+-" and s[-2] not in "eE":
        kind = FROM_RIGHT if s[-1] == "+" else FROM_LEFT
        s = s[:-1]
    try:
        r = float(s)
    except ValueError:
        raise InvalidInput(f"malformed limit target {text!r}") from None
    if not math.isfinite(r):
        raise InvalidInput(f"malformed limit target {text!r}")
    return LimitTarget(kind, r)


# --------------------------------------------------------------------------
# results


@dataclass(frozen=True)
class Value:
    value: ExtendedReal
    kind = "value"

    def __str__(self) -> str:
        return format_ext(self.value)


@dataclass(frozen=True)
class DoesNotExist:
    left: ExtendedReal
    right: ExtendedReal
    kind = "dne"

    def __post_init__(self):
        if self.left == self.right:
            raise ValueError("a missing limit needs two different one-sided values")

    def __str__(self) -> str:
        return f"DNE (left={format_ext(self.left)}, right={format_ext(self.right)})"


@dataclass(frozen=True)
class Indeterminate:
    reason: str
    interval: Optional[Tuple[float, float]] = None
    kind = "indeterminate"

    def __str__(self) -> str:
        if self.interval is None:
            return f"indeterminate ({self.reason})"
        lo, hi = self.interval
        return f"indeterminate ({self.reason}; in [{format_ext(ExtendedReal(lo))}, {format_ext(ExtendedReal(hi))}])"


LimitResult = Union[Value, DoesNotExist, Indeterminate]

# failures that a wider window may repair
_RETRYABLE = (IllegalForm, IndeterminateSign, IndeterminateDivisor, IndeterminateClass, PrecisionExhausted)


def substitution(target: LimitTarget, window=DEFAULT_WINDOW, scale: float = 1.0) -> Hyper:
    """The hyperreal that stands in for ``x`` when approaching ``target``."""
    w = exponent(window)
    if target.kind == TO_PLUS_INFINITY:
        return monomial(1.0 / scale, -1, w)
    if target.kind == TO_MINUS_INFINITY:
        return monomial(-1.0 / scale, -1, w)
    if target.kind == TWO_SIDED:
        raise ValueError("a two-sided target has no single substitution")
    step = monomial(scale if target.kind == FROM_RIGHT else -scale, 1, w)
    return from_real(target.point, w) + step


def standard_part_with_retry(compute: Callable[[object], Hyper], window) -> Union[ExtendedReal, Indeterminate]:
    w = exponent(window)
    last = None
    for attempt in (w, 2 * w):
        try:
            return st(compute(attempt))
        except UndeterminedStandardPart as exc:
            return Indeterminate("bounded oscillation", exc.interval)
        except _RETRYABLE as exc:
            last = exc
    return Indeterminate(f"precision exhausted: {last}")


def one_sided_limit(e: Expr, target: LimitTarget, window=DEFAULT_WINDOW, scale: float = 1.0):
    """``st(e(x))`` at the substitution for ``target``; an infinity, a real or
    an :class:`Indeterminate`.  Leaving the domain raises DomainError."""
    if not target.is_one_sided:
        raise ValueError("use two_sided_limit for a two-sided target")
    return standard_part_with_retry(lambda w: eval_hyper(e, substitution(target, w, scale)), window)


def same_extended(a: ExtendedReal, b: ExtendedReal, tolerance: float = DEFAULT_TOLERANCE) -> bool:
    if not (a.is_finite and b.is_finite):
        return a.value == b.value
    return abs(a.value - b.value) <= tolerance * max(1.0, abs(a.value), abs(b.value))


def _combine(left, right, tolerance: float) -> LimitResult:
    if isinstance(left, Indeterminate):
        return left
    if isinstance(right, Indeterminate):
        return right
    if same_extended(left, right, tolerance):
        return Value(right)
    return DoesNotExist(left, right)


def two_sided_limit(e: Expr, r: float, window=DEFAULT_WINDOW, scale: float = 1.0, tolerance: float = DEFAULT_TOLERANCE) -> LimitResult:
    """Both one-sided limits at ``r`` and their verdict.

    When only one side lies in the domain, the limit is taken relative to
    the domain and equals that side.
    """
    sides = []
    errors = []
    for target in (LimitTarget.from_left(r), LimitTarget.from_right(r)):
        try:
            sides.append(one_sided_limit(e, target, window, scale))
        except DomainError as exc:
            sides.append(None)
            errors.append(exc)
    left, right = sides
    if left is None and right is None:
        raise errors[0]
    if left is None or right is None:
        only = right if left is None else left
        return only if isinstance(only, Indeterminate) else Value(only)
    return _combine(left, right, tolerance)


def limit(e: Expr, target: LimitTarget, window=DEFAULT_WINDOW, scale: float = 1.0, tolerance: float = DEFAULT_TOLERANCE) -> LimitResult:
    """Uniform entry point returning a :data:`LimitResult` for any target."""
    if target.kind == TWO_SIDED:
        return two_sided_limit(e, target.point, window, scale, tolerance)
    result = one_sided_limit(e, target, window, scale)
    return result if isinstance(result, Indeterminate) else Value(result)


def derivative_at(e: Expr, x0: float, window=DEFAULT_WINDOW, scale: float = 1.0, tolerance: float = DEFAULT_TOLERANCE) -> LimitResult:
    """``st((f(x0 + h) - f(x0)) / h)`` for ``h = +t`` and ``h = -t``."""

    def quotient(sign: float):
        def compute(w):
            h = monomial(sign * scale, 1, w)
            base = from_real(x0, w)
            return div(sub(eval_hyper(e, base + h), eval_hyper(e, base)), h)

        return compute

    right = standard_part_with_retry(quotient(1.0), window)
    left = standard_part_with_retry(quotient(-1.0), window)
    return _combine(left, right, tolerance)


# --------------------------------------------------------------------------
# counterexample generator


def _distinct(points: Sequence[Tuple[float, float]], r: float):
    seen = {}
    for xi, yi in points:
        xi, yi = float(xi), float(yi)
        if not (math.isfinite(xi) and math.isfinite(yi)):
            raise InvalidInput("sample points must be finite")
        if xi == r:
            raise InvalidInput("a sample point coincides with the limit point")
        if xi in seen:
            if not math.isclose(seen[xi], yi, rel_tol=1e-12, abs_tol=1e-300):
                raise InvalidInput(f"conflicting values at x = {xi!r}")
            continue
        seen[xi] = yi
    return sorted(seen.items())


def _interpolate_shifted(nodes, values, r: float, anchor: float) -> list:
    """Coefficients ``c`` with ``sum c_k (x - r)^k`` taking ``anchor`` at
    ``r`` and ``values`` at ``nodes``."""
    if not nodes:
        return [anchor]
    u = np.array([xi - r for xi in nodes])
    s = float(np.max(np.abs(u)))
    scaled = u / s
    m = len(nodes)
    matrix = np.vander(scaled, m + 1, increasing=True)[:, 1:]
    rhs = np.array(values) - anchor
    try:
        a = np.linalg.solve(matrix, rhs)
    except np.linalg.LinAlgError:
        raise NumericalFailure("interpolation system is singular") from None
    if not np.all(np.isfinite(a)):
        raise NumericalFailure("interpolation system is singular")
    return [anchor] + [float(a[k] / s ** (k + 1)) for k in range(m)]


def _polynomial_expr(coefficients: Sequence[float], r: float) -> Expr:
    x = Variable("x")
    shifted = Binary("sub", x, Constant(r)) if r != 0 else x
    node: Expr = Constant(coefficients[0])
    for k, c in enumerate(coefficients[1:], start=1):
        power = shifted if k == 1 else Binary("pow", shifted, Constant(float(k)))
        node = Binary("add", node, Binary("mul", Constant(c), power))
    return node


def counterexample_poly(points: Sequence[Tuple[float, float]], r: float, L) -> Expr:
    """A function through every sample point whose limit at ``r`` is ``L``.

    A finite ``L`` gives a polynomial in ``x - r`` with constant term ``L``.
    An infinite ``L`` adds ``sign(L) * W(x)^2 / (x - r)^2`` to a polynomial
    through the points, with ``W(x) = prod(x - x_i)``; ``W`` is exactly zero
    at every node, so the added term cannot spoil the interpolation.
    """
    r = float(r)
    L = L if isinstance(L, ExtendedReal) else parse_ext(L) if isinstance(L, str) else ExtendedReal(float(L))
    table = _distinct(points, r)
    nodes = [xi for xi, _ in table]
    values = [yi for _, yi in table]
    if L.is_finite:
        return _polynomial_expr(_interpolate_shifted(nodes, values, r, L.value), r)
    x = Variable("x")
    base = _polynomial_expr(_interpolate_shifted(nodes, values, r, 0.0), r)
    w: Expr = Constant(1.0)
    for xi in nodes:
        factor = Binary("sub", x, Constant(xi)) if xi != 0 else x
        w = factor if isinstance(w, Constant) else Binary("mul", w, factor)
    shifted = Binary("sub", x, Constant(r)) if r != 0 else x
    pole = Binary("div", Binary("pow", w, Constant(2.0)), Binary("pow", shifted, Constant(2.0)))
    sign = 1.0 if L.is_plus_infinity else -1.0
    return Binary("add", base, Binary("mul", Constant(sign), pole))


# --------------------------------------------------------------------------
# numeric sampling oracle

CONVERGED = "converged"
DIVERGING = "diverging"
OSCILLATING = "oscillating"
SAMPLE_STEPS = tuple(10.0 ** -k for k in range(3, 9))
NOISE_FLOOR = 1e-7


@dataclass(frozen=True)
class Estimate:
    value: Optional[ExtendedReal]
    confidence: str
    samples: Tuple[float, ...] = ()


def _sample(e: Expr, target: LimitTarget) -> list:
    values = []
    for h in SAMPLE_STEPS:
        if target.kind == TO_PLUS_INFINITY:
            x = 1.0 / h
        elif target.kind == TO_MINUS_INFINITY:
            x = -1.0 / h
        else:
            x = target.point + (h if target.kind == FROM_RIGHT else -h)
        try:
            v = eval_real(e, x)
        except (HyperlimError, OverflowError, ZeroDivisionError, ValueError):
            continue
        if not math.isnan(v):
            values.append(v)
    return values


def _classify(values: list) -> Estimate:
    samples = tuple(values)
    if any(math.isinf(v) for v in values):
        if all(v == values[-1] for v in values if math.isinf(v)) and math.isinf(values[-1]):
            return Estimate(ExtendedReal(values[-1]), DIVERGING, samples)
        return Estimate(None, OSCILLATING, samples)
    if len(values) < 3:
        return Estimate(None, OSCILLATING, samples)
    diffs = [b - a for a, b in zip(values, values[1:])]
    mags = [abs(d) for d in diffs]
    scale = max(1.0, abs(values[-1]))
    if mags[-1] <= 1e-13 * scale:
        return Estimate(ExtendedReal(values[-1]), CONVERGED, samples)
    window = mags[-3:] if len(mags) >= 3 else mags
    # cancellation at h = 1e-8 leaves noise near eps / h, so steps below
    # NOISE_FLOOR count as settled rather than as a failure to contract
    noise = NOISE_FLOOR * scale
    contracting = all(b <= 0.75 * a + noise for a, b in zip(window, window[1:]))
    if contracting and mags[-1] <= 1e-2 * scale:
        return Estimate(ExtendedReal(_aitken(values)), CONVERGED, samples)
    same_sign = all(v > 0 for v in values) or all(v < 0 for v in values)
    growing = all(abs(b) > abs(a) for a, b in zip(values, values[1:]))
    steady = all(d > 0 for d in diffs) or all(d < 0 for d in diffs)
    if same_sign and growing and steady and mags[-1] >= 0.5 * mags[0]:
        return Estimate(PLUS_INFINITY if values[-1] > 0 else MINUS_INFINITY, DIVERGING, samples)
    return Estimate(None, OSCILLATING, samples)


def _aitken(values: list) -> float:
    v1, v2, v3 = values[-3:]
    d1, d2 = v2 - v1, v3 - v2
    denominator = d2 - d1
    if denominator == 0:
        return v3
    guess = v3 - d2 * d2 / denominator
    return guess if abs(guess - v3) <= 10 * abs(d2) else v3


def numeric_estimate(e: Expr, target: LimitTarget) -> Estimate:
    """Classify the trend of plain float samples approaching ``target``.

    Steps ``h = 1e-3 .. 1e-8`` (or ``x = 1e3 .. 1e8`` at infinity).  A
    two-sided target merges both sides and reports ``oscillating`` when they
    disagree.
    """
    if target.kind != TWO_SIDED:
        values = _sample(e, target)
        if not values:
            raise DomainError(f"no sample near {target} lies in the domain")
        return _classify(values)
    sides = []
    for side in (LimitTarget.from_left(target.point), LimitTarget.from_right(target.point)):
        values = _sample(e, side)
        if values:
            sides.append(_classify(values))
    if not sides:
        raise DomainError(f"no sample near {target} lies in the domain")
    if len(sides) == 1:
        return sides[0]
    left, right = sides
    if left.confidence == right.confidence != OSCILLATING and left.value is not None and right.value is not None:
        if same_extended(left.value, right.value, 1e-6):
            return Estimate(right.value, right.confidence, left.samples + right.samples)
    return Estimate(None, OSCILLATING, left.samples + right.samples)


# --------------------------------------------------------------------------
# regression corpus


@dataclass(frozen=True)
class CorpusCase:
    expression: str
    target: LimitTarget
    expected: str  # a decimal, "inf", "-inf", "dne" or "indeterminate"
    line: int = 0

    @property
    def text(self) -> str:
        return f"{self.expression} ; {self.target} ; {self.expected}"


@dataclass(frozen=True)
class CaseOutcome:
    case: CorpusCase
    result: Optional[LimitResult]
    passed: bool
    error: Optional[str] = None


def parse_corpus(text: str) -> list:
    cases = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = [p.strip() for p in line.split(";")]
        if len(parts) != 3 or not all(parts):
            raise InvalidInput(f"line {number}: expected '<expr> ; <target> ; <expected>'")
        expression, target, expected = parts
        expected = expected.lower()
        if expected not in ("dne", "indeterminate"):
            parse_ext(expected)
        parse(expression)
        cases.append(CorpusCase(expression, parse_target(target), expected, number))
    return cases


def read_corpus(path) -> list:
    return parse_corpus(Path(path).read_text())


def worked_examples() -> list:
    """The shipped regression corpus of worked textbook examples."""
    text = resources.files("hyperlim").joinpath("data/worked_examples.txt").read_text()
    return parse_corpus(text)


def verdict_matches(result: LimitResult, expected: str, tolerance: float = DEFAULT_TOLERANCE) -> bool:
    if expected == "dne":
        return isinstance(result, DoesNotExist)
    if expected == "indeterminate":
        return isinstance(result, Indeterminate)
    return isinstance(result, Value) and same_extended(result.value, parse_ext(expected), tolerance)


def check_case(case: CorpusCase, window=DEFAULT_WINDOW, scale: float = 1.0, tolerance: float = DEFAULT_TOLERANCE) -> CaseOutcome:
    try:
        result = limit(parse(case.expression), case.target, window, scale, tolerance)
    except HyperlimError as exc:
        return CaseOutcome(case, None, False, f"{type(exc).__name__}: {exc}")
    return CaseOutcome(case, result, verdict_matches(result, case.expected, tolerance))


__all__ = [
    "CorpusCase",
    "CaseOutcome",
    "DoesNotExist",
    "Estimate",
    "Indeterminate",
    "LimitResult",
    "LimitTarget",
    "Value",
    "check_case",
    "counterexample_poly",
    "derivative_at",
    "limit",
    "numeric_estimate",
    "one_sided_limit",
    "worked_examples",
    "parse_corpus",
    "parse_target",
    "read_corpus",
    "same_extended",
    "standard_part_with_retry",
    "substitution",
    "two_sided_limit",
    "verdict_matches",
]

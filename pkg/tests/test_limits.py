import math
import random

import numpy as np
import pytest

from hyperlim.errors import DomainError, HyperlimError, InvalidInput
from hyperlim.expr import eval_real, parse, to_text
from hyperlim.extreal import MINUS_INFINITY, PLUS_INFINITY, finite
from hyperlim.limits import (
    CONVERGED,
    DIVERGING,
    OSCILLATING,
    DoesNotExist,
    Indeterminate,
    LimitTarget,
    Value,
    check_case,
    counterexample_poly,
    derivative_at,
    limit,
    numeric_estimate,
    one_sided_limit,
    worked_examples,
    parse_corpus,
    parse_target,
    two_sided_limit,
)
from oracles import random_expression, richardson_derivative

R, L = LimitTarget.from_right, LimitTarget.from_left
PLUS, MINUS = LimitTarget.plus_infinity(), LimitTarget.minus_infinity()


@pytest.mark.parametrize(
    "text,target",
    [
        ("x->1", LimitTarget.two_sided(1)),
        ("x->0+", R(0)),
        ("x->-2.5-", L(-2.5)),
        ("x->+inf", PLUS),
        ("x->-inf", MINUS),
        ("x -> 1e-3+", R(1e-3)),
        ("3", LimitTarget.two_sided(3)),
    ],
)
def test_parse_target(text, target):
    assert parse_target(text) == target


@pytest.mark.parametrize("text", ["x->", "x->a", "y->1", "x->inf+", "x->nan"])
def test_parse_target_rejects(text):
    with pytest.raises(InvalidInput):
        parse_target(text)


def test_target_text_round_trips():
    for tg in (R(0.5), L(-1.0), LimitTarget.two_sided(2.0), PLUS, MINUS):
        assert parse_target(str(tg)) == tg


def test_one_sided_examples():
    e = parse("abs(x)/x")
    assert one_sided_limit(e, R(0)) == finite(1)
    assert one_sided_limit(e, L(0)) == finite(-1)
    e = parse("(4*x+1)/(x+1)")
    assert one_sided_limit(e, R(-1)) == MINUS_INFINITY
    assert one_sided_limit(e, L(-1)) == PLUS_INFINITY
    e = parse("x/root(4, x^4+1)")
    assert one_sided_limit(e, PLUS) == finite(1)
    assert one_sided_limit(e, MINUS) == finite(-1)
    assert one_sided_limit(parse("sin(x)/x"), PLUS) == finite(0)


def test_two_sided_examples():
    assert two_sided_limit(parse("(x^3 + 4*x^2 + x - 6)/(x - 1)"), 1) == Value(finite(12))
    assert two_sided_limit(parse("abs(x)/x"), 0) == DoesNotExist(finite(-1), finite(1))
    dne = two_sided_limit(parse("(x^3 - 9)/(x^3 + x^2 - 7*x + 2)"), 2)
    assert dne == DoesNotExist(PLUS_INFINITY, MINUS_INFINITY)
    assert two_sided_limit(parse("x^2"), 3) == Value(finite(9))


def test_two_sided_infinite_pole_of_even_order():
    assert two_sided_limit(parse("1/x^2"), 0) == Value(PLUS_INFINITY)


def test_oscillation_is_indeterminate_with_interval():
    result = two_sided_limit(parse("sin(1/x)"), 0)
    assert isinstance(result, Indeterminate)
    assert result.interval == (-1.0, 1.0)


def test_squeeze_free_product():
    assert two_sided_limit(parse("x*sin(1/x)"), 0) == Value(finite(0))
    assert two_sided_limit(parse("x^2*cos(1/x^2)"), 0) == Value(finite(0))


def test_domain_on_one_side_only():
    assert two_sided_limit(parse("sqrt(x)"), 0) == Value(finite(0))
    with pytest.raises(DomainError):
        two_sided_limit(parse("sqrt(x)"), -1)
    with pytest.raises(DomainError):
        one_sided_limit(parse("ln(x)"), L(0))


def test_limits_through_exp_and_ln():
    assert limit(parse("x*ln(x)"), R(0)) == Value(finite(0))
    assert limit(parse("exp(-1/x)"), R(0)) == Value(finite(0))
    assert limit(parse("exp(-1/x)"), L(0)) == Value(PLUS_INFINITY)
    assert limit(parse("ln(x)/x"), PLUS) == Value(finite(0))
    assert limit(parse("x^3*exp(-x)"), PLUS) == Value(finite(0))
    assert limit(parse("(exp(x) - 1)/x"), LimitTarget.two_sided(0)) == Value(finite(1))


def test_scale_of_infinitesimal_does_not_matter():
    e = parse("(x^3 + 4*x^2 + x - 6)/(x - 1)")
    for lam in (0.5, 2.0, 3.0):
        assert two_sided_limit(e, 1, scale=lam) == Value(finite(12))


def test_derivative_examples():
    assert derivative_at(parse("x^3"), 2) == Value(finite(12))
    assert derivative_at(parse("abs(x)"), 0) == DoesNotExist(finite(-1), finite(1))
    assert derivative_at(parse("sin(x)"), 0) == Value(finite(1))
    assert derivative_at(parse("root(3, x)"), 0) == Value(PLUS_INFINITY)


def test_derivative_matches_richardson():
    rng = random.Random(11)
    checked = 0
    while checked < 50:
        e = parse(random_expression(rng, 2, smooth=True))
        x0 = round(rng.uniform(-2, 2), 3)
        f = lambda x: eval_real(e, x)  # noqa: E731
        try:
            reference = richardson_derivative(f, x0)
            coarse = richardson_derivative(f, x0, h=2e-3)
        except (HyperlimError, OverflowError):
            continue
        if not math.isfinite(reference) or abs(reference) > 1e6:
            continue
        if abs(reference - coarse) > 1e-9 * max(1.0, abs(reference)):
            continue  # the finite-difference reference itself has not settled
        result = derivative_at(e, x0)
        assert isinstance(result, Value), to_text(e)
        assert result.value.value == pytest.approx(reference, rel=1e-6, abs=1e-6), (to_text(e), x0)
        checked += 1


def test_counterexample_two_points():
    e = counterexample_poly([(1, 2)], 0, 5)
    assert eval_real(e, 1) == pytest.approx(2)
    assert two_sided_limit(e, 0) == Value(finite(5))


def test_counterexample_cubic_residuals():
    pts = [(1, 2.0), (2, -1.0), (3, 0.5)]
    e = counterexample_poly(pts, 0, 7)
    # independent check: solve the 4x4 Vandermonde system directly
    v = np.vander(np.array([0.0, 1.0, 2.0, 3.0]), 4, increasing=True)
    c = np.linalg.solve(v, np.array([7.0, 2.0, -1.0, 0.5]))
    for x in (0.5, 1.5, 2.5, 4.0):
        assert eval_real(e, x) == pytest.approx(float(np.polyval(c[::-1], x)), rel=1e-9)
    for x, y in pts:
        assert abs(eval_real(e, x) - y) < 1e-9


def test_counterexample_ignores_the_samples():
    e = counterexample_poly([(1e-10, 1.99999999999)], 0, 17)
    assert eval_real(e, 1e-10) == pytest.approx(1.99999999999, rel=1e-6)
    assert two_sided_limit(e, 0) == Value(finite(17))


def test_counterexample_infinite_limit():
    e = counterexample_poly([(1, 2.0), (-2, 3.0)], 0, "-inf")
    assert eval_real(e, 1) == pytest.approx(2.0)
    assert eval_real(e, -2) == pytest.approx(3.0)
    assert two_sided_limit(e, 0) == Value(MINUS_INFINITY)


def test_counterexample_input_checks():
    with pytest.raises(InvalidInput):
        counterexample_poly([(0, 1)], 0, 3)
    with pytest.raises(InvalidInput):
        counterexample_poly([(1, 1), (1, 2)], 0, 3)
    e = counterexample_poly([(1, 1), (1, 1)], 0, 3)
    assert eval_real(e, 1) == pytest.approx(1)


def test_numeric_estimate_examples():
    est = numeric_estimate(parse("(x^3+4*x^2+x-6)/(x-1)"), LimitTarget.two_sided(1))
    assert est.confidence == CONVERGED and est.value.value == pytest.approx(12, rel=1e-6)
    assert numeric_estimate(parse("sin(1/x)"), R(0)).confidence == OSCILLATING
    est = numeric_estimate(parse("1/x"), R(0))
    assert est.confidence == DIVERGING and est.value == PLUS_INFINITY
    est = numeric_estimate(parse("ln(x)"), R(0))
    assert est.confidence == DIVERGING and est.value == MINUS_INFINITY


def test_numeric_estimate_two_sided_disagreement():
    assert numeric_estimate(parse("abs(x)/x"), LimitTarget.two_sided(0)).confidence == OSCILLATING


def test_numeric_estimate_outside_domain():
    with pytest.raises(DomainError):
        numeric_estimate(parse("sqrt(x)"), L(-1))


def test_corpus_parse_and_check():
    cases = parse_corpus("# c\nx^2 ; x->3 ; 9\n\nabs(x)/x ; x->0 ; dne  # trailing\n")
    assert [c.line for c in cases] == [2, 4]
    assert all(check_case(c).passed for c in cases)
    with pytest.raises(InvalidInput):
        parse_corpus("x ; x->1\n")
    assert not check_case(parse_corpus("x ; x->1 ; 2")[0]).passed


def test_shipped_corpus_passes():
    for case in worked_examples():
        outcome = check_case(case)
        assert outcome.passed, (case.text, outcome.result, outcome.error)


def test_one_and_two_sided_coherence():
    for case in worked_examples():
        if case.target.kind != "two_sided":
            continue
        e = parse(case.expression)
        r = case.target.point
        left, right = one_sided_limit(e, L(r)), one_sided_limit(e, R(r))
        both = isinstance(left, type(right)) and not isinstance(left, Indeterminate) and left == right
        assert isinstance(two_sided_limit(e, r), Value) == both


def test_counterexample_infinite_limit_near_the_point():
    e = counterexample_poly([(1e-10, 1.99999999999), (0.5, -4.0)], 0, "inf")
    assert eval_real(e, 1e-10) == pytest.approx(1.99999999999, rel=1e-9)
    assert eval_real(e, 0.5) == pytest.approx(-4.0, rel=1e-9)
    assert two_sided_limit(e, 0) == Value(PLUS_INFINITY)

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st_

from hyperlim.errors import DomainError
from hyperlim.extreal import PLUS_INFINITY, finite, st
from hyperlim.hyperfield import classify, dx, format_hyper, from_real, monomial, mul, one, sub
from hyperlim.lift import ABS, COS, EXP, LN, SIN, SQRT, TAN, ElementaryFn, lift, powconst, taylor_coefficients

t = dx()


def test_functions_validate_names():
    with pytest.raises(ValueError):
        ElementaryFn("sinh")
    with pytest.raises(ValueError):
        ElementaryFn("powconst")


def test_taylor_coefficients_closed_forms():
    assert taylor_coefficients(EXP, 0, 4) == pytest.approx([1, 1, 0.5, 1 / 6])
    assert taylor_coefficients(SIN, 0, 4) == pytest.approx([0, 1, 0, -1 / 6])
    assert taylor_coefficients(COS, 0, 5) == pytest.approx([1, 0, -0.5, 0, 1 / 24])
    assert taylor_coefficients(LN, 1, 4) == pytest.approx([0, 1, -0.5, 1 / 3])
    assert taylor_coefficients(TAN, 0, 6) == pytest.approx([0, 1, 0, 1 / 3, 0, 2 / 15])
    assert taylor_coefficients(SQRT, 4, 3) == pytest.approx([2, 0.25, -1 / 64])
    assert taylor_coefficients(powconst(3), 0, 5) == pytest.approx([0, 0, 0, 1, 0])


def test_non_analytic_points():
    for f, c in ((LN, 0.0), (SQRT, 0.0), (ABS, 0.0), (TAN, math.pi / 2)):
        with pytest.raises(DomainError):
            taylor_coefficients(f, c, 3)


def test_sin_over_dx():
    assert st(lift(SIN, t) / t) == finite(1)


def test_sin_of_infinitely_large_is_bounded_unknown():
    assert format_hyper(lift(SIN, one() / t)) == "O~(dx^0)·[-1,1]"
    assert st(mul(lift(SIN, one() / t), t)) == finite(0)


def test_sqrt_matches_binomial_series():
    h = lift(SQRT, from_real(3) + t)
    assert h.coefficient(1) == pytest.approx(1 / (2 * math.sqrt(3)))


def test_exp_growth_classes():
    assert st(lift(EXP, one() / t)) == PLUS_INFINITY
    assert st(lift(EXP, -(one() / t))) == finite(0)
    # exp(1/t) outgrows every power
    assert st(mul(lift(EXP, one() / t), monomial(1, 5))) == PLUS_INFINITY


def test_ln_growth_classes():
    big = lift(LN, one() / t)
    assert st(big) == PLUS_INFINITY
    assert st(mul(big, t)) == finite(0)
    assert classify(mul(lift(LN, t), t)).is_infinitesimal


def test_ln_of_infinitesimal_needs_positive_sign():
    with pytest.raises(DomainError):
        lift(LN, -t)


def test_tan_at_pole_is_domain_error():
    with pytest.raises(DomainError):
        lift(TAN, from_real(math.pi / 2) + t)


def test_abs_of_negative_orientation():
    assert lift(ABS, -t).terms == t.terms


def test_exp_of_infinitesimal_classes_start_at_one():
    tiny = lift(EXP, -(one() / t))
    assert st(lift(EXP, tiny)) == finite(1)
    assert st(lift(COS, tiny)) == finite(1)
    assert st(lift(SIN, tiny)) == finite(0)


def test_bounded_unknown_argument_maps_through_interval():
    h = lift(EXP, lift(SIN, one() / t))
    lo, hi = math.exp(-1), math.exp(1)
    assert h.coefficient(0) == pytest.approx((lo + hi) / 2)
    assert h.fuzz.bound == pytest.approx((hi - lo) / 2)


points = st_.floats(min_value=-3, max_value=3, allow_nan=False)


@settings(max_examples=50, deadline=None)
@given(points)
def test_pythagorean_identity(x):
    a = from_real(x) + t
    s, c = lift(SIN, a), lift(COS, a)
    total = s * s + c * c
    assert total.coefficient(0) == pytest.approx(1.0)
    for e, coefficient in total.terms:
        if e > 0:
            assert abs(coefficient) < 1e-9


@settings(max_examples=50, deadline=None)
@given(st_.floats(min_value=0.1, max_value=5, allow_nan=False))
def test_exp_inverts_ln(x):
    a = from_real(x) + t
    back = lift(EXP, lift(LN, a))
    diff = sub(back, a)
    assert all(abs(c) < 1e-9 * max(1.0, x) for _, c in diff.terms)


@settings(max_examples=50, deadline=None)
@given(points)
def test_derivative_coefficient_matches_closed_form(x):
    for f in (SIN, COS, EXP):
        h = lift(f, from_real(x) + t)
        assert h.coefficient(1) == pytest.approx(f.derivative(x), abs=1e-12)

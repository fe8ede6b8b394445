import math

import pytest

from hyperlim.errors import DomainError, IllegalForm, InvalidScalar, NotFinite, PrecisionExhausted, UndeterminedStandardPart
from hyperlim.extreal import (
    MINUS_INFINITY,
    PLUS_INFINITY,
    ExtendedReal,
    decompose,
    ext_add,
    ext_div,
    ext_exp,
    ext_ln,
    ext_mul,
    ext_pow,
    ext_sub,
    finite,
    format_ext,
    parse_ext,
    st,
)
from hyperlim.hyperfield import Envelope, big_o, dx, envelope, from_real, from_terms, fuzz, monomial, one

t = dx()


def test_nan_is_rejected():
    with pytest.raises(InvalidScalar):
        ExtendedReal(math.nan)


def test_text_round_trip():
    for text in ("inf", "-inf", "0", "2.5", "-1e-10", "12"):
        assert format_ext(parse_ext(text)) == text
    assert parse_ext("+inf") == PLUS_INFINITY
    with pytest.raises(ValueError):
        parse_ext("nan")


def test_order():
    assert MINUS_INFINITY < finite(-1e300) < finite(0) < PLUS_INFINITY


def test_mixed_signs_through_infinity():
    assert ext_mul(PLUS_INFINITY, finite(-1.5)) == MINUS_INFINITY
    assert ext_add(finite(2), finite(3)) == finite(5)
    assert ext_div(finite(1), PLUS_INFINITY) == finite(0)
    assert ext_div(PLUS_INFINITY, finite(-2)) == MINUS_INFINITY


@pytest.mark.parametrize(
    "call,form",
    [
        (lambda: ext_add(PLUS_INFINITY, MINUS_INFINITY), "inf-inf"),
        (lambda: ext_sub(PLUS_INFINITY, PLUS_INFINITY), "inf-inf"),
        (lambda: ext_mul(finite(0), PLUS_INFINITY), "0*inf"),
        (lambda: ext_div(finite(0), finite(0)), "0/0"),
        (lambda: ext_div(finite(1), finite(0)), "1/0"),
        (lambda: ext_div(PLUS_INFINITY, MINUS_INFINITY), "inf/inf"),
        (lambda: ext_pow(finite(0), finite(0)), "0^0"),
        (lambda: ext_pow(finite(1), PLUS_INFINITY), "1^inf"),
        (lambda: ext_pow(PLUS_INFINITY, finite(0)), "inf^0"),
    ],
)
def test_illegal_forms_name_themselves(call, form):
    with pytest.raises(IllegalForm) as info:
        call()
    assert info.value.form == form


def test_exp_and_ln_at_infinity():
    assert ext_exp(PLUS_INFINITY) == PLUS_INFINITY
    assert ext_exp(MINUS_INFINITY) == finite(0)
    assert ext_ln(PLUS_INFINITY) == PLUS_INFINITY
    with pytest.raises(DomainError):
        ext_ln(finite(0))


def test_power_with_infinite_exponent():
    assert ext_pow(finite(2), MINUS_INFINITY) == finite(0)
    assert ext_pow(finite(0.5), MINUS_INFINITY) == PLUS_INFINITY
    assert ext_pow(finite(0.5), PLUS_INFINITY) == finite(0)
    assert ext_pow(PLUS_INFINITY, finite(-1)) == finite(0)
    assert ext_pow(MINUS_INFINITY, finite(3)) == MINUS_INFINITY


def test_standard_parts():
    assert st(from_terms([(1, 3.0), (2, -4.0)])) == finite(0)
    assert st(monomial(1, -1)) == PLUS_INFINITY
    assert st(monomial(-1, -1)) == MINUS_INFINITY
    assert st(from_real(2.5) + t) == finite(2.5)


def test_standard_part_of_bounded_unknown():
    with pytest.raises(UndeterminedStandardPart) as info:
        st(fuzz(0, 1.0))
    assert info.value.interval == (-1.0, 1.0)
    assert st(fuzz(0, 1.0) * t) == finite(0)


def test_standard_part_lost_to_truncation():
    with pytest.raises(PrecisionExhausted):
        st(big_o(0))


def test_standard_part_of_growth_classes():
    assert st(envelope(Envelope(1, 0, 0, "slack", "big"))) == PLUS_INFINITY
    assert st(envelope(Envelope(1, math.inf, math.inf, "small", "slack"))) == finite(0)
    with pytest.raises(UndeterminedStandardPart):
        st(envelope(Envelope(None, 0, 0, "slack", "big")))


def test_decompose():
    d = decompose(from_real(3) + t)
    assert d.standard == 3 and d.infinitesimal_part.terms == t.terms
    d = decompose(from_real(5))
    assert d.standard == 5 and d.infinitesimal_part.is_zero
    d = decompose(t * t - from_real(7))
    assert d.standard == -7 and d.infinitesimal_part.terms == (t * t).terms


def test_decompose_errors():
    with pytest.raises(NotFinite):
        decompose(one() / t)
    with pytest.raises(UndeterminedStandardPart):
        decompose(fuzz(0, 2.0))

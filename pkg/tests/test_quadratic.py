from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from iet_lowdisc.errors import RadicandMismatch, RationalInput, InvalidParams
from iet_lowdisc.quadratic import (
    QuadReal,
    beta,
    cf_expand,
    compare,
    floor_quad,
    frac_quad,
    golden,
    moving_average,
    parse_quad,
    quad_arith,
    to_decimal,
)

SQRT5 = QuadReal(0, 1, 5)

small_q = st.fractions(min_value=-20, max_value=20, max_denominator=30)


@st.composite
def quads(draw, d=5):
    return QuadReal(draw(small_q), draw(small_q), d)


def test_sqrt5_squared():
    assert quad_arith(SQRT5, SQRT5, "mul") == 5


def test_defining_relations():
    g = golden()
    assert g * g + g == 1
    b = beta(2, 2)
    assert 2 * b + 2 * b * b == 1
    b = beta(3, 2)
    assert 3 * b + 2 * b * b == 1
    assert b == QuadReal(Fraction(-3, 4), Fraction(1, 4), 17)


def test_beta_reduces_radicand():
    b = beta(2, 2)
    assert (b.a, b.b, b.d) == (Fraction(-1, 2), Fraction(1, 2), 3)
    assert golden() == QuadReal(Fraction(-1, 2), Fraction(1, 2), 5)


def test_beta_rejects_bad_params():
    with pytest.raises(InvalidParams):
        beta(0, 1)
    with pytest.raises(InvalidParams):
        beta(1, -2)


def test_compare_examples():
    b = beta(2, 2)
    assert compare(golden(), 1) == -1
    assert compare(b, b * b + b * b) == 1
    assert compare(b, b) == 0


def test_mixed_radicands_rejected():
    with pytest.raises(RadicandMismatch):
        golden() + beta(2, 2)
    with pytest.raises(RadicandMismatch):
        compare(golden(), beta(2, 2))


def test_rationals_mix_with_any_radicand():
    assert golden() + Fraction(1, 2) - Fraction(1, 2) == golden()
    assert beta(2, 2) * 0 == 0


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        quad_arith(golden(), QuadReal(0), "div")


def test_floor_examples():
    assert floor_quad(golden()) == 0
    assert floor_quad(3 + 2 * SQRT5) == 7
    assert floor_quad(-golden()) == -1


def test_frac_examples():
    g = golden()
    assert frac_quad(2 * g) == 2 * g - 1
    assert frac_quad(QuadReal(0)) == 0
    b = beta(2, 2)
    assert frac_quad(-b) == 1 - b


@given(quads())
def test_floor_brackets(x):
    n = floor_quad(x)
    assert n <= x < n + 1
    f = frac_quad(x)
    assert 0 <= f < 1 and f + n == x


@given(quads(), quads(), quads())
def test_field_laws(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert x * (y + z) == x * y + x * z
    assert (x * y) * z == x * (y * z)
    if x:
        assert x * x.inverse() == 1
        assert (y / x) * x == y


@given(quads(), quads())
def test_order_matches_floats_when_separated(x, y):
    if abs(float(x) - float(y)) > 1e-9:
        assert (x < y) == (float(x) < float(y))
    assert compare(x, y) == -compare(y, x)


@given(quads(d=7))
def test_parse_round_trip(x):
    assert parse_quad(str(x)) == x


def test_parse_forms():
    assert parse_quad("golden") == golden()
    assert parse_quad("3/7") == Fraction(3, 7)
    assert parse_quad("sqrt(12)") == 2 * QuadReal(0, 1, 3)
    assert parse_quad("-1/2 + 1/2*sqrt(5)") == golden()
    for bad in ("", "1/0", "2sqrt(5)", "1+sqrt(2)+sqrt(3)", "abc"):
        with pytest.raises(ValueError):
            parse_quad(bad)


def test_to_decimal_rounds_exactly():
    assert to_decimal(golden(), 6) == "0.618034"
    assert to_decimal(Fraction(1, 8), 2) == "0.13"
    assert to_decimal(-golden(), 3) == "-0.618"
    assert to_decimal(QuadReal(3), 1) == "3.0"


def test_cf_golden():
    cf = cf_expand(golden(), 10)
    assert (cf.a0, cf.preperiod, cf.period) == (0, (), (1,))
    assert str(cf) == "[0; (1)]"
    rep = moving_average(cf, 50)
    assert rep.limit == 1 and rep.supremum_observed == 1 and rep.bounded


def test_cf_beta22():
    cf = cf_expand(beta(2, 2), 10)
    assert cf.period == (2, 1) and not cf.preperiod
    assert moving_average(cf, 40).limit == Fraction(3, 2)


def test_cf_rational_terminates():
    cf = cf_expand(QuadReal(Fraction(3, 7)), 10)
    assert cf.terminated and cf.preperiod == (2, 3) and str(cf) == "[0; 2,3]"
    with pytest.raises(RationalInput):
        moving_average(cf, 5)


def test_cf_preperiod():
    # sqrt(7) = [2; (1,1,1,4)]
    cf = cf_expand(QuadReal(0, 1, 7))
    assert cf.a0 == 2 and cf.period == (1, 1, 1, 4)
    x = 3 + SQRT5 / 7
    cf = cf_expand(x)
    assert cf.period
    # convergents approach x
    c = cf.convergents(30)[-1]
    assert abs(float(x) - float(c)) < 1e-12


@given(st.integers(1, 6), st.integers(1, 6))
def test_cf_of_irrational_beta_is_periodic(L, S):
    b = beta(L, S)
    cf = cf_expand(b)
    if b.is_rational:
        assert cf.terminated
    else:
        assert cf.period and not cf.terminated

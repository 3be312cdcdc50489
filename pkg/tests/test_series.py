from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rtp.arith import Poly
from rtp.expr import ExprError, free_names, parse_series
from rtp.series import (Series, SeriesError, compose, div, exp_series, log_series,
                        pow_rational, revert)

N = 8
coeff = st.fractions(min_value=-3, max_value=3, max_denominator=4)


def series_zero_const(cs):
    return Series([0] + cs, N)


@given(st.lists(coeff, min_size=N, max_size=N))
def test_log_exp_roundtrip(cs):
    f = series_zero_const(cs)
    assert log_series(exp_series(f)) == f


@settings(max_examples=40)
@given(st.lists(coeff, min_size=N, max_size=N), coeff, coeff)
def test_pow_additive(cs, a, b):
    g = Series([1] + cs, N)
    assert pow_rational(g, a) * pow_rational(g, b) == pow_rational(g, a + b)


@settings(max_examples=40)
@given(st.lists(coeff, min_size=N - 1, max_size=N - 1),
       st.fractions(min_value=1, max_value=3, max_denominator=3))
def test_revert_involution(cs, lead):
    f = Series([0, lead] + cs, N)
    g = revert(f)
    assert compose(f, g) == Series.t(N)
    assert revert(g) == f


def test_division_and_errors():
    one = Series.const(1, 5)
    t = Series.t(5)
    geo = div(one, one - t)
    assert list(geo.coeffs) == [1] * 6
    with pytest.raises(SeriesError):
        div(one, t)
    with pytest.raises(SeriesError):
        exp_series(one)
    with pytest.raises(SeriesError):
        log_series(t)


def test_exp_coefficients():
    e = exp_series(Series.t(10))
    assert [c * factorial(n) for n, c in enumerate(e.coeffs)] == [1] * 11


def test_symbolic_series():
    s = parse_series("exp(lambda*t/(1-t))", 4)
    assert s.ring == ("lambda",)
    lam = Poly.var("lambda", ("lambda",))
    # t^2 coefficient: lambda + lambda^2/2
    assert s[2] == lam + lam * lam / 2


def test_expr_grammar():
    assert parse_series("(1-2*t)^(1/2)", 3) == pow_rational(Series([1, -2], 3), Fraction(1, 2))
    assert parse_series("1/(1-t)**2", 3).coeffs == (1, 2, 3, 4)
    assert parse_series("revert(t*exp(t))", 3)[3] == Fraction(3, 2)
    assert parse_series("x*t", 2, {"x": "1/3"})[1] == Fraction(1, 3)
    assert free_names("a*t + exp(b*t)", {"b": 1}) == ["a"]
    with pytest.raises(ExprError):
        parse_series("t^t", 3)
    with pytest.raises(ExprError):
        parse_series("1 +", 3)
    with pytest.raises(SeriesError):
        parse_series("exp(1+t)", 3)

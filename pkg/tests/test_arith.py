from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rtp.arith import (Poly, binomial, cofactor_det, det_exact, format_rational, is_nonneg,
                       parse_rational, real_root_count_with_multiplicity, sturm_real_root_count,
                       to_json_value, from_json_value)

small = st.integers(-6, 6)
rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)


def test_parse_and_format_roundtrip():
    assert parse_rational("3/6") == Fraction(1, 2)
    assert parse_rational(" -7 ") == -7
    assert format_rational(Fraction(4)) == "4/1"
    assert format_rational(Fraction(-2, 4)) == "-1/2"
    with pytest.raises(ValueError):
        parse_rational("1/x")
    with pytest.raises(TypeError):
        parse_rational(True)


@given(rationals)
def test_format_parse_inverse(x):
    assert parse_rational(format_rational(x)) == x


def test_poly_basic_ops():
    q = Poly.var("q", ("q", "x"))
    x = Poly.var("x", ("q", "x"))
    p = (q + x) ** 2
    assert p == q * q + 2 * q * x + x * x
    assert p.subs({"q": 1, "x": 2}) == 9
    assert repr(q * q - 3 * q + 1) == "q^2 - 3*q + 1"
    assert is_nonneg(p) and not is_nonneg(q - x)
    assert from_json_value(to_json_value(p)) == p


def test_poly_exact_div():
    q = Poly.var("q", ("q",))
    a = (q + 1) * (q + 2)
    assert a.exact_div(q + 1) == q + 2


@given(st.lists(st.lists(small, min_size=4, max_size=4), min_size=4, max_size=4))
def test_det_matches_cofactor_rational(rows):
    rows = [[Fraction(v) for v in r] for r in rows]
    assert det_exact(rows) == cofactor_det(rows)


@settings(max_examples=30)
@given(st.integers(1, 5), st.data())
def test_det_matches_cofactor_poly(n, data):
    q = Poly.var("q", ("q",))
    rows = [[data.draw(small) * q + data.draw(small) for _ in range(n)] for _ in range(n)]
    assert det_exact(rows) == cofactor_det(rows)


def test_sturm_counts():
    # (x+1)^2 (x-3) (x^2+1)
    p = [Fraction(c) for c in (-3, -5, -4, -4, -1, 1)]
    assert sturm_real_root_count(p) == 2
    assert real_root_count_with_multiplicity(p) == 3
    assert real_root_count_with_multiplicity(p, hi=Fraction(0)) == 2


def test_generalized_binomial():
    assert binomial(Fraction(1, 2), 2) == Fraction(-1, 8)
    assert binomial(5, 2) == 10
    assert binomial(3, -1) == 0

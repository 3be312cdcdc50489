from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rtp.arith import Poly
from rtp.catalog import lah
from rtp.contfrac import (BranchedSF, ContFracError, Schedule, bsf_series,
                          bsf_series_via_production, periodic_sf, schedule_hankel, schedule_lah,
                          schedule_series, schedule_sheffer, schedule_sheffer_star)

F = Fraction
q = Poly.var("q", ("q",))


def test_catalan_s_fraction():
    s = bsf_series(BranchedSF(1, [1] * 10), 8)
    assert list(s.coeffs) == [comb(2 * n, n) // (n + 1) for n in range(9)]


def test_zero_schedule():
    assert list(bsf_series(BranchedSF(2, [0] * 12), 5).coeffs) == [1, 0, 0, 0, 0, 0]
    assert list(bsf_series_via_production(0, 0, [1], 5).coeffs) == [1, 0, 0, 0, 0, 0]


def test_lah_m2_schedule():
    s = schedule_lah(1, 1, 1, 0, "sym")
    assert s.m == 2
    assert s.head(6) == [q, 1, 1, q, 2, 2]
    ser = schedule_series(s, 6)
    L = lah(6).row_polys
    assert ser.coeffs[3] == 6 * q + 6 * q * q + q ** 3
    assert list(ser.coeffs) == L
    assert schedule_series(s, 8, "production") == schedule_series(s, 8, "recursive")


def test_sheffer_schedules():
    s = schedule_sheffer(0, "sym", [1, 1])
    assert s.head(6) == [q, 1, 1, q, 2, 2]
    b = schedule_sheffer_star(0, "sym", [1, 1])
    assert b.head(6) == [1, q, q, 1, 2 * q, 2 * q]
    with pytest.raises(ContFracError):
        schedule_sheffer(0, "sym", [])


@pytest.mark.parametrize("m", [1, 2, 3])
def test_routes_agree_symbolic(m):
    s = schedule_hankel("sym", F(1, 2), [F(j + 1) for j in range(m)])
    assert schedule_series(s, 8) == schedule_series(s, 8, "production")


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 3), st.fractions(0, 3, max_denominator=3),
       st.fractions(0, 2, max_denominator=2),
       st.lists(st.fractions(0, 3, max_denominator=3), min_size=3, max_size=3))
def test_routes_agree_random(m, nu, b, xs):
    sf = periodic_sf(nu, b, xs[:m])
    assert bsf_series(sf, 7) == bsf_series_via_production(nu, b, xs[:m], 7)


def test_schedule_errors():
    with pytest.raises(ContFracError):
        Schedule(0, values=[1])
    with pytest.raises(ContFracError):
        bsf_series(BranchedSF(1, [1, 1]), 6)
    with pytest.raises(ContFracError):
        schedule_series(Schedule(1, values=[1] * 9), 4, "production")

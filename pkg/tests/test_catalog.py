from fractions import Fraction
from math import comb, factorial

import pytest

from rtp.arith import Poly
from rtp.catalog import (FAMILIES, PARAM_GRID, SYM, DomainError, RealizationMismatch,
                         Triangle, bell_partial, bessel2_oracle, binomial_triangle, build_family,
                         callan_H, callan_row_sums, cross_check, cycle_index, double_factorial,
                         eulerian_triangle, fractional_triangle, gen_bessel1, gen_bessel2, gen_lah,
                         idempotent_triangle, laguerre_triangle, lah, log_frac_identity,
                         logarithmic_triangle, pascal_triangle, real_roots_check,
                         reciprocal_recurrence, reciprocal_triangle, rook_polys, rook_triangle,
                         stirling2, tree_row_polys, tree_triangle)
from rtp.positivity import RingMatrix, check_tp, hankel, is_tp_r
from rtp.riordan import matrix_row_polys
from rtp.series import Series

F = Fraction
q = Poly.var("q", ("q",))


def rows(T, upto=None):
    n = T.N if upto is None else upto
    return [list(T.row(i))[: i + 1] for i in range(n + 1)]


# cycle index ---------------------------------------------------------------

def test_cycle_index():
    A, _ = cycle_index(8, lambdas=[1])
    assert A == [1] * 9
    A, _ = cycle_index(10, lambdas=[1, 2])
    assert A == [2 ** (n + 1) - 1 for n in range(11)]
    _, P = cycle_index(7, xs=[1] * 7)
    assert P == [factorial(n) for n in range(8)]
    with pytest.raises(DomainError):
        cycle_index(3, lambdas=[-1])


# Bessel second kind -------------------------------------------------------------

def test_bessel2_classical():
    T = gen_bessel2(1, F(1, 2), 0, 6, verify=True)
    assert T[4, 2] == 3 and T[4, 3] == 6
    assert gen_bessel2(1, 0, 0, 6).entries == RingMatrix.identity(7)
    assert gen_bessel2(1, 1, 1, 5, mode="formula") == gen_bessel2(1, 1, 1, 5)


def test_bessel2_oracle_values():
    assert bessel2_oracle(3, 2) == 3
    assert bessel2_oracle(4, 2) == 3
    assert all(bessel2_oracle(n, n) == 1 for n in range(1, 7))


def test_bessel2_first_entry_is_a():
    # the recurrence, ERA and formula all give B[1][1] = a
    T = gen_bessel2(3, 1, 0, 3, verify=True)
    assert T[1, 1] == 3


@pytest.mark.parametrize("b,r", [(F(1), 2), (F(3, 2), 3), (F(2), 5)])
def test_bessel2_tp_boundary(b, r):
    # b^2 >= 4ac cos^2(pi/(r+1)) with a = c = 1; only the TP_r conclusion is checked
    assert is_tp_r(gen_bessel2(1, b, 1, 9).entries, r).passed


# Bessel first kind, Lah -----------------------------------------------------------

def test_bessel1_rows():
    T = gen_bessel1(2, 1, 1, 0, 0, 6, verify=True)
    assert rows(T, 3)[3] == [0, 3, 3, 1]
    assert [sum(T.row(n)) for n in range(6)] == [1, 1, 2, 7, 37, 266]


def test_bessel1_diagonal_is_c_power():
    T = gen_bessel1(2, 1, 3, 0, 0, 6)
    assert [T[n, n] for n in range(7)] == [3 ** n for n in range(7)]


def test_lah_values():
    L = lah(6)
    assert L.row_polys[3] == q ** 3 + 6 * q ** 2 + 6 * q
    assert rows(L, 2)[2] == [0, 2, 1]
    assert stirling2(5)[5, 2] == 15
    B = bell_partial([factorial(j) for j in range(1, 8)], 7)
    assert B.entries == lah(7).entries


def test_lah_a0_is_stirling():
    assert gen_lah(0, 1, 1, 0, 0, 7, verify=True).entries == stirling2(7).entries


def test_lah_symbolic_lambda():
    T = gen_lah(1, 1, 1, 0, SYM, 4, verify=True)
    lam = T[1, 0]
    assert isinstance(lam, Poly) and lam.vars == ("lambda",)


def test_lah_tridiagonal_condition_conclusion():
    # b > c and abd/(b-c) >= lambda > 0: check TP of the triangle and the
    # coefficientwise Hankel TP_2 of its row polynomials
    T = gen_lah(1, 2, 1, 1, 2, 8)
    assert is_tp_r(T.entries, 3).passed
    assert check_tp(hankel(T.row_polys, 4), 2).passed


def test_reciprocal_variants():
    for fam, builder in (("gen_lah", gen_lah), ("gen_bessel1", gen_bessel1)):
        for params in [(1, 1, 1, 0, 0), (2, 1, 1, F(1, 2), F(1, 3))]:
            T = builder(*params, 7)
            R = reciprocal_recurrence(fam, *params, 7)
            assert reciprocal_triangle(T).entries == R.entries
    assert rows(reciprocal_triangle(lah(3)), 2)[2] == [1, 2, 0]
    ident = reciprocal_triangle(pascal_triangle(3).entries.map(lambda x: x))
    assert ident[3, 0] == 1


def test_real_roots():
    assert real_roots_check(lah(8)).passed
    assert real_roots_check(rook_triangle(8)).passed
    bad = Triangle(RingMatrix([[1, 0, 0], [0, 1, 0], [1, 0, 1]]),
                   lah(2).family)  # 1 + q^2 has no real roots
    assert not real_roots_check(bad).passed


# Callan -----------------------------------------------------------------------

def test_callan():
    assert callan_row_sums(10) == [double_factorial(2 * n - 1) for n in range(11)]
    assert sum(callan_H(4).row(4)) == 105
    cross_check("callan", 8)


# idempotent, tree, Lambert ----------------------------------------------------

def test_idempotent_and_tree():
    I = idempotent_triangle(6, verify=True)
    assert rows(I, 4)[4] == [0, 4, 24, 12, 1]
    T = tree_triangle(8, verify=True)
    assert rows(T, 3)[3] == [0, 9, -6, 1]
    for n in range(1, 9):
        for k in range(1, n + 1):
            assert T[n, k] == (-1) ** (n - k) * comb(n - 1, k - 1) * n ** (n - k)
    polys = tree_row_polys(4)
    assert polys[3] == q ** 3 + 6 * q * q + 9 * q


# Laguerre and rook -------------------------------------------------------------

def test_laguerre_and_rook():
    L = laguerre_triangle(0, 6, verify=True)
    assert L.row_polys[2] == 2 + 4 * q + q * q
    for alpha in PARAM_GRID["laguerre"]:
        cross_check("laguerre", 8, {"alpha": alpha})
    S = rook_polys(3)
    assert S[3] == 1 + 9 * q + 18 * q * q + 6 * q ** 3


# Eulerian ---------------------------------------------------------------------

def test_eulerian():
    E = eulerian_triangle(8, verify=True)
    assert rows(E, 4)[3][1:] == [1, 4, 1]
    assert rows(E, 4)[4][1:] == [1, 11, 11, 1]
    assert sum(E.row(4)) == 24


# binomial families ---------------------------------------------------------------

@pytest.mark.parametrize("c,d,m", [(0, 1, 0), (1, 1, 2), (-1, 2, 1), (0, 2, 3), (2, 3, 1)])
def test_binomial_first(c, d, m):
    T = binomial_triangle("first", c, d, 7, m=m, verify=True)
    for r in range(8):
        for k in range(r + 1):
            top, bot = r + c * k, m + d * k
            want = comb(r, k) * (comb(top, bot) if 0 <= bot <= top else 0) * factorial(r - k)
            assert T[r, k] == want
    binomial_triangle("first", c, d, 7, m=m, bare=True, verify=True)


@pytest.mark.parametrize("c,d,n", [(0, -1, 3), (1, -1, 2), (2, -2, 4)])
def test_binomial_second(c, d, n):
    binomial_triangle("second", c, d, 7, n=n, verify=True)


def test_binomial_domain():
    with pytest.raises(DomainError):
        binomial_triangle("first", 2, 1, 5, m=1)
    with pytest.raises(DomainError):
        binomial_triangle("second", 0, 1, 5, n=1)


# Bell, logarithmic, fractional ---------------------------------------------------

def test_bell_grid():
    for xs in PARAM_GRID["bell_partial"]:
        bell_partial(xs, 10, verify=True)


def test_log_fractional():
    f = Series([0, 1, 1, 1, 1, 1, 1, 1], 7)
    assert log_frac_identity(f, 7)
    Ft = fractional_triangle(Series([0, 1], 5), 5)
    assert all(Ft[n, k] == (factorial(n) if n == k else 0) for n in range(6) for k in range(6))
    L = logarithmic_triangle(f, 5)
    assert L[0, 0] == 1


# registry ----------------------------------------------------------------------

def test_registry_builds_everything():
    extra = {"bell_partial": {"xs": [1] * 6}, "binomial": {"m": 1}}
    for name in FAMILIES:
        T = build_family(name, 5, extra.get(name))
        assert T.entries.shape == (6, 6)
        # C(0, m) vanishes for m >= 1, so only the binomial family may start at 0
        assert T[0, 0] == (0 if name == "binomial" else 1)
    with pytest.raises(DomainError):
        build_family("nope", 3)


def test_mismatch_is_reported():
    from rtp.catalog import _check_modes
    A = RingMatrix.identity(3)
    B = RingMatrix([[1, 0, 0], [0, 1, 0], [0, 2, 1]])
    with pytest.raises(RealizationMismatch):
        spec = lah(2).family
        _check_modes("demo", {"x": Triangle(A, spec), "y": Triangle(B, spec)})


def test_triangle_rejects_non_lower():
    with pytest.raises(RealizationMismatch):
        Triangle(RingMatrix([[1, 1], [0, 1]]), lah(1).family)

"""Exponential Riordan arrays (g, f).

Column k of ``(g, f)`` has exponential generating function ``g f^k / k!``, so
``R[n][k] = n!/k! [t^n] g f^k``. Arrays with ``f'(0) = 0`` (or ``g(0) = 0``)
are allowed for triangle generation only.
"""
from __future__ import annotations

from fractions import Fraction
from math import factorial

from rtp.arith import Poly
from rtp.positivity import RingMatrix
from rtp.series import Series, SeriesError, _is_unit, _is_zero, compose, div, revert


class ImproperArrayError(ValueError):
    """Operation needs a proper array (g(0) and f'(0) units)."""


class ExpRiordan:
    __slots__ = ("g", "f", "order")

    def __init__(self, g: Series, f: Series, order=None, general=False):
        order = min(g.order, f.order) if order is None else order
        if order > min(g.order, f.order):
            raise SeriesError("array order exceeds the series orders")
        if not general and not _is_zero(f[0]):
            raise SeriesError("f(0) must be 0")
        ring = g.ring or f.ring
        if g.ring and f.ring and g.ring != f.ring:
            raise SeriesError(f"ring mismatch: {g.ring} vs {f.ring}")
        if ring:
            g = g if g.ring else g.with_ring(ring)
            f = f if f.ring else f.with_ring(ring)
        self.g = g.truncate(order)
        self.f = f.truncate(order)
        self.order = order

    @property
    def ring(self):
        return self.g.ring

    @property
    def proper(self):
        return (_is_zero(self.f[0]) and self.order >= 1 and _is_unit(self.f[1])
                and _is_unit(self.g[0]))

    def __repr__(self):
        return f"ExpRiordan(g={self.g!r}, f={self.f!r})"

    def __eq__(self, other):
        return isinstance(other, ExpRiordan) and self.g == other.g and self.f == other.f

    def __hash__(self):
        return hash((self.g, self.f))


def identity_array(order, ring=None):
    return ExpRiordan(Series.const(1, order, ring), Series.t(order, ring))


def _column_series(R: ExpRiordan, N):
    cols = []
    cur = R.g.truncate(N)
    f = R.f.truncate(N)
    for _ in range(N + 1):
        cols.append(cur)
        cur = cur * f
    return cols


def triangle(R: ExpRiordan, N=None, scaled=False) -> RingMatrix:
    """(N+1)x(N+1) matrix ``R[n][k]``; ``scaled`` multiplies column k by k!."""
    N = R.order if N is None else N
    if N > R.order:
        raise SeriesError(f"triangle of size {N + 1} needs order >= {N}")
    cols = _column_series(R, N)
    rows = []
    for n in range(N + 1):
        nf = factorial(n)
        row = []
        for k in range(N + 1):
            c = cols[k][n] * nf
            if not scaled:
                c = c / factorial(k) if isinstance(c, Poly) else Fraction(c, factorial(k))
            row.append(c)
        rows.append(row)
    return RingMatrix(rows)


def scaled_triangle(R, N=None):
    return triangle(R, N, scaled=True)


def row_polys(R_or_matrix, N=None, var="q"):
    """Row-generating polynomials ``R_n(q) = sum_k R[n][k] q^k``."""
    M = triangle(R_or_matrix, N) if isinstance(R_or_matrix, ExpRiordan) else R_or_matrix
    return matrix_row_polys(M, var)


def matrix_row_polys(M: RingMatrix, var="q"):
    base = None
    for r in M.rows:
        for x in r:
            if isinstance(x, Poly):
                base = x.vars
                break
        if base:
            break
    if base and var in base:
        raise ValueError(f"row variable {var!r} already used by entries")
    vars = (base or ()) + (var,)
    qi = len(vars) - 1
    out = []
    for r in M.rows:
        terms = {}
        for k, x in enumerate(r):
            if isinstance(x, Poly):
                for e, c in x.terms.items():
                    terms[e + (k,)] = terms.get(e + (k,), 0) + c
            elif x:
                e = [0] * len(vars)
                e[qi] = k
                terms[tuple(e)] = x
        out.append(Poly(vars, terms))
    return out


def multiply(R1: ExpRiordan, R2: ExpRiordan) -> ExpRiordan:
    """``(g, f) * (h, l) = (g h(f), l(f))``."""
    n = min(R1.order, R2.order)
    g1, f1 = R1.g.truncate(n), R1.f.truncate(n)
    g2, f2 = R2.g.truncate(n), R2.f.truncate(n)
    return ExpRiordan(g1 * compose(g2, f1), compose(f2, f1))


def _require_proper(R):
    if not R.proper:
        raise ImproperArrayError("operation needs a proper array (g(0), f'(0) units)")


def inverse(R: ExpRiordan) -> ExpRiordan:
    """``(g, f)^{-1} = (1 / g(fbar), fbar)``."""
    _require_proper(R)
    fbar = revert(R.f)
    one = Series.const(1, R.order, R.ring)
    return ExpRiordan(div(one, compose(R.g, fbar)), fbar)


def za_sequences(R: ExpRiordan):
    """``Z = g'(fbar)/g(fbar)``, ``A = f'(fbar)``, both to order N-1."""
    _require_proper(R)
    fbar = revert(R.f)
    n = R.order - 1
    fb = fbar.truncate(n)
    A = compose(R.f.derivative(), fb)
    Z = div(compose(R.g.derivative(), fb), compose(R.g, fbar).truncate(n))
    return Z, A


class ProductionMatrix(RingMatrix):
    """Hessenberg matrix P with ``Rbar = R P``; keeps its Z and A sequences."""

    __slots__ = ("z_seq", "a_seq", "scaled")

    def __init__(self, rows, z_seq, a_seq, scaled=False):
        super().__init__(rows)
        self.z_seq = tuple(z_seq)
        self.a_seq = tuple(a_seq)
        self.scaled = scaled


def production_from_za(z, a, size, scaled=False):
    """``p_{i,j} = i!/j! (z_{i-j} + j a_{i-j+1})`` (without i!/j! if scaled)."""
    z, a = list(z), list(a)
    zero = next((x * 0 for x in z + a if isinstance(x, Poly)), Fraction(0))
    rows = []
    for i in range(size):
        row = []
        for j in range(size):
            if j > i + 1:
                row.append(zero)
                continue
            v = zero
            if i - j >= 0:
                v = v + z[i - j]
            if j:
                v = v + j * a[i - j + 1]
            if not scaled:
                v = v * Fraction(factorial(i), factorial(j))
            row.append(v)
        rows.append(row)
    return ProductionMatrix(rows, z, a, scaled)


def production_matrix(R: ExpRiordan, N=None, scaled=False) -> ProductionMatrix:
    """(N+1)x(N+1) production matrix; needs array order >= N+1."""
    N = R.order - 1 if N is None else N
    if R.order < N + 1:
        raise SeriesError(f"production matrix of size {N + 1} needs order >= {N + 1}")
    Z, A = za_sequences(R)
    return production_from_za(Z.coeffs[: N + 1], A.coeffs[: N + 1], N + 1, scaled)


def verify_production(R: ExpRiordan, N=None, scaled=False) -> bool:
    """Check rows 1..N of the triangle equal (rows 0..N-1) times P, exactly."""
    N = R.order - 1 if N is None else N
    T = triangle(R, N, scaled=scaled)
    P = production_matrix(R, N, scaled=scaled)
    top = T.block(N, N + 1)
    bottom = T.block(N, N + 1, r0=1)
    return top @ P == bottom


def cycle_index_triangle(M: RingMatrix) -> RingMatrix:
    """Divide row n by n! (Sheffer to cycle-index scaling)."""
    if isinstance(M, ExpRiordan):
        M = triangle(M)
    return RingMatrix([[x / factorial(n) if isinstance(x, Poly) else Fraction(x, factorial(n))
                        for x in row] for n, row in enumerate(M.rows)])

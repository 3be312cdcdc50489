"""Truncated formal power series over Q or a polynomial ring.

A :class:`Series` of order ``N`` stores ``c_0 .. c_N``; nothing beyond ``t^N``
is ever consulted. Binary operations truncate to the smaller order.
"""
from __future__ import annotations

from fractions import Fraction
from math import factorial

from rtp.arith import Poly, common_vars, format_rational, is_scalar, to_json_value


class SeriesError(ValueError):
    """Violated constant-term or ring precondition."""


def _is_zero(x):
    return x == 0


def _is_unit(x):
    if isinstance(x, Poly):
        return x.is_constant() and x.constant_term() != 0
    return x != 0


def _inverse_unit(x):
    if isinstance(x, Poly):
        return Fraction(1) / x.constant_term()
    return Fraction(1) / Fraction(x)


class Series:
    __slots__ = ("coeffs", "ring")

    def __init__(self, coeffs, order=None, ring=None):
        coeffs = list(coeffs)
        if order is None:
            order = len(coeffs) - 1
        if order < 0:
            raise SeriesError("series order must be >= 0")
        coeffs = coeffs[: order + 1] + [0] * (order + 1 - len(coeffs))
        found = common_vars(coeffs)
        if ring is not None and found is not None and tuple(ring) != found:
            raise SeriesError(f"ring mismatch: {found} vs {tuple(ring)}")
        self.ring = tuple(ring) if ring is not None else found
        if self.ring is not None:
            coeffs = [c if isinstance(c, Poly) else Poly.const(c, self.ring) for c in coeffs]
        else:
            coeffs = [Fraction(c) for c in coeffs]
        self.coeffs = tuple(coeffs)

    # constructors -------------------------------------------------------
    @classmethod
    def const(cls, c, order, ring=None):
        return cls([c], order, ring)

    @classmethod
    def t(cls, order, ring=None):
        return cls([0, 1], order, ring)

    @classmethod
    def from_egf(cls, seq, order=None, ring=None):
        """Series with ``c_n = seq[n] / n!``."""
        seq = list(seq)
        order = len(seq) - 1 if order is None else order
        return cls([x / factorial(n) if isinstance(x, Poly) else Fraction(x, factorial(n))
                    for n, x in enumerate(seq[: order + 1])], order, ring)

    # basics -------------------------------------------------------------
    @property
    def order(self):
        return len(self.coeffs) - 1

    def __getitem__(self, n):
        return self.coeffs[n]

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def truncate(self, order):
        if order > self.order:
            raise SeriesError(f"cannot extend order {self.order} to {order}")
        return Series(self.coeffs[: order + 1], order, self.ring)

    def with_ring(self, ring):
        """Embed coefficients into the polynomial ring over ``ring``."""
        ring = tuple(ring)
        out = []
        for c in self.coeffs:
            if isinstance(c, Poly):
                out.append(c.extend(ring))
            else:
                out.append(Poly.const(c, ring))
        return Series(out, self.order, ring)

    def _join(self, other):
        if isinstance(other, Series):
            if self.ring is not None and other.ring is not None and self.ring != other.ring:
                raise SeriesError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other
        if is_scalar(other) or isinstance(other, Poly):
            return Series.const(other, self.order, self.ring if not isinstance(other, Poly) else other.vars)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        n = min(self.order, other.order)
        return all(a == b for a, b in zip(self.coeffs[: n + 1], other.coeffs[: n + 1]))

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        terms = []
        for n, c in enumerate(self.coeffs):
            if c == 0:
                continue
            cs = f"({c})" if isinstance(c, Poly) else str(c)
            terms.append(cs if n == 0 else f"{cs}*t^{n}")
        return f"Series({' + '.join(terms) or '0'}; O(t^{self.order + 1}))"

    # ring operations ----------------------------------------------------
    def __neg__(self):
        return Series([-c for c in self.coeffs], self.order, self.ring)

    def __add__(self, other):
        other = self._join(other)
        if other is NotImplemented:
            return other
        n = min(self.order, other.order)
        return Series([a + b for a, b in zip(self.coeffs[: n + 1], other.coeffs[: n + 1])], n)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._join(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._join(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if is_scalar(other) or isinstance(other, Poly):
            return Series([c * other for c in self.coeffs], self.order)
        other = self._join(other)
        if other is NotImplemented:
            return other
        n = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        lo_a = next((i for i in range(n + 1) if not _is_zero(a[i])), n + 1)
        lo_b = next((i for i in range(n + 1) if not _is_zero(b[i])), n + 1)
        out = [0] * (n + 1)
        for k in range(lo_a + lo_b, n + 1):
            acc = 0
            for i in range(lo_a, k - lo_b + 1):
                ai = a[i]
                if not _is_zero(ai):
                    bj = b[k - i]
                    if not _is_zero(bj):
                        acc = acc + ai * bj
            out[k] = acc
        return Series(out, n, self.ring or other.ring)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if is_scalar(other):
            return Series([c / other if isinstance(c, Poly) else c / Fraction(other)
                           for c in self.coeffs], self.order, self.ring)
        other = self._join(other)
        if other is NotImplemented:
            return other
        return div(self, other)

    def __rtruediv__(self, other):
        other = self._join(other)
        if other is NotImplemented:
            return other
        return div(other, self)

    def __pow__(self, e):
        if isinstance(e, int) and not isinstance(e, bool):
            if e < 0:
                return div(Series.const(1, self.order, self.ring), self ** (-e))
            result = Series.const(1, self.order, self.ring)
            base = self
            while e:
                if e & 1:
                    result = result * base
                base = base * base
                e >>= 1
            return result
        return pow_rational(self, Fraction(e))

    # calculus -----------------------------------------------------------
    def derivative(self):
        if self.order == 0:
            raise SeriesError("derivative of an order-0 series has no coefficients")
        return Series([n * self.coeffs[n] for n in range(1, self.order + 1)],
                      self.order - 1, self.ring)

    def integral(self):
        """Antiderivative with zero constant term (order grows by one)."""
        return Series([0] + [c / (n + 1) if isinstance(c, Poly) else c / Fraction(n + 1)
                             for n, c in enumerate(self.coeffs)],
                      self.order + 1, self.ring)

    def valuation(self):
        for n, c in enumerate(self.coeffs):
            if not _is_zero(c):
                return n
        return None

    def egf_coeffs(self):
        return [factorial(n) * c for n, c in enumerate(self.coeffs)]

    def to_json(self):
        return [to_json_value(c) for c in self.coeffs]


def div(a: Series, b: Series) -> Series:
    """``a / b`` for ``b`` with a unit constant term."""
    if not _is_unit(b[0]):
        raise SeriesError("divisor must have a unit constant term")
    n = min(a.order, b.order)
    inv = _inverse_unit(b[0])
    out = []
    for k in range(n + 1):
        acc = a[k]
        for i in range(1, k + 1):
            if not _is_zero(b[i]) and not _is_zero(out[k - i]):
                acc = acc - b[i] * out[k - i]
        out.append(acc * inv)
    return Series(out, n, a.ring or b.ring)


def compose(outer: Series, inner: Series) -> Series:
    """``outer(inner(t))`` by Horner's rule; ``inner`` must have zero constant term."""
    if not _is_zero(inner[0]):
        raise SeriesError("inner series must have zero constant term")
    n = min(outer.order, inner.order)
    ring = outer.ring or inner.ring
    acc = Series.const(outer[n], n, ring)
    for k in range(n - 1, -1, -1):
        acc = acc * inner + Series.const(outer[k], n, ring)
    return acc.truncate(n)


def revert(f: Series) -> Series:
    """Compositional inverse of ``f`` (``f(0) = 0``, ``f'(0)`` a unit)."""
    if not _is_zero(f[0]):
        raise SeriesError("reversion needs f(0) = 0")
    if f.order < 1 or not _is_unit(f[1]):
        raise SeriesError("reversion needs f'(0) to be a unit")
    n = f.order
    inv1 = _inverse_unit(f[1])
    g = Series([0, inv1], n, f.ring)
    # fix one coefficient per pass: f(g) = t + e_k t^k + ...  ->  g_k -= e_k / f_1
    for k in range(2, n + 1):
        err = compose(f, g)[k]
        if not _is_zero(err):
            coeffs = list(g.coeffs)
            coeffs[k] = coeffs[k] - err * inv1
            g = Series(coeffs, n, f.ring)
    return g


def exp_series(f: Series) -> Series:
    """``exp(f)`` for ``f(0) = 0`` via ``n h_n = sum_k k f_k h_{n-k}``."""
    if not _is_zero(f[0]):
        raise SeriesError("exp needs a zero constant term")
    n = f.order
    h = [Poly.const(1, f.ring) if f.ring else Fraction(1)]
    for m in range(1, n + 1):
        acc = 0
        for k in range(1, m + 1):
            if not _is_zero(f[k]):
                acc = acc + k * f[k] * h[m - k]
        h.append(acc / m if isinstance(acc, Poly) else Fraction(acc) / m)
    return Series(h, n, f.ring)


def log_series(g: Series) -> Series:
    """``log(g)`` for ``g(0) = 1``."""
    if g[0] != 1:
        raise SeriesError("log needs constant term 1")
    if g.order == 0:
        return Series.const(0, 0, g.ring)
    return div(g.derivative(), g.truncate(g.order - 1)).integral()


def pow_rational(g: Series, e) -> Series:
    """``g ** e`` as ``exp(e log g)``; needs ``g(0) = 1``."""
    e = Fraction(e)
    if g[0] != 1:
        raise SeriesError("rational power needs constant term 1")
    return exp_series(log_series(g) * e)


def egf_coeff(s: Series, n: int):
    if n > s.order:
        raise SeriesError(f"coefficient {n} beyond order {s.order}")
    return factorial(n) * s[n]


def add(a, b):
    return a + b


def mul(a, b):
    return a * b


def derivative(s):
    return s.derivative()


__all__ = [
    "Series", "SeriesError", "add", "mul", "derivative", "div", "compose", "revert",
    "exp_series", "log_series", "pow_rational", "egf_coeff", "format_rational",
]

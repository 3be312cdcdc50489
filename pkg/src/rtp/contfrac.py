"""m-branched Stieltjes-type continued fractions.

Two independent evaluators:

* :func:`bsf_series` expands the nested fraction
  ``F(j) = 1 / (1 - alpha_j t prod_{i=1..m} F(j+i))`` by memoized recursion on
  (coefficient index, remaining order). A node reached with remaining order
  w only matters modulo ``t^(w+1)``, so recursion stops at w = 0.
* :func:`bsf_series_via_production` reads ``(P^n)_{0,0}`` off a product of
  bidiagonal matrices.

They agree whenever the schedule has the periodic shape
``(nu, x_1..x_m, nu+b, 2x_1..2x_m, nu+2b, ...)``.
"""
from __future__ import annotations

from fractions import Fraction

from rtp.arith import Poly
from rtp.positivity import RingMatrix
from rtp.riordan import ProductionMatrix
from rtp.series import Series, div


class ContFracError(ValueError):
    """Schedule too short or malformed."""


def _coerce(x, name):
    if isinstance(x, Poly):
        return x
    if isinstance(x, str):
        if x == "sym":
            return Poly.var(name, (name,))
        return Fraction(x)
    return Fraction(x)


def _join_ring(values):
    ring = ()
    for v in values:
        if isinstance(v, Poly):
            for name in v.vars:
                if name not in ring:
                    ring += (name,)
    return ring or None


def _embed(x, ring):
    if ring is None:
        return x
    if isinstance(x, Poly):
        return x.extend(ring)
    return Poly.const(x, ring)


class Schedule:
    """Coefficient stream ``alpha_i`` for i >= m.

    Either a finite list (``values[0]`` is ``alpha_m``) or the periodic form
    ``(nu, x_1..x_m, nu + b, 2x_1..2x_m, ...)``.
    """

    def __init__(self, m, values=None, nu=None, b=0, xs=None, ring=None):
        if m < 1:
            raise ContFracError("branch count m must be >= 1")
        self.m = m
        if values is not None:
            vals = [_coerce(v, "q") for v in values]
            self.ring = ring or _join_ring(vals)
            self.values = [_embed(v, self.ring) for v in vals]
            self.nu = self.b = self.xs = None
        else:
            if xs is None or len(xs) != m:
                raise ContFracError(f"periodic schedule needs exactly m = {m} x values")
            parts = [nu, b] + list(xs)
            self.ring = ring or _join_ring(parts)
            self.nu = _embed(nu, self.ring)
            self.b = _embed(b, self.ring)
            self.xs = [_embed(x, self.ring) for x in xs]
            self.values = None

    @property
    def periodic(self):
        return self.values is None

    def __getitem__(self, i):
        m = self.m
        if i < m:
            raise IndexError(f"coefficients start at index {m}")
        p = i - m
        if self.values is not None:
            if p >= len(self.values):
                raise ContFracError(f"schedule has no coefficient alpha_{i}")
            return self.values[p]
        block, rem = divmod(p, m + 1)
        if rem == 0:
            return self.nu + block * self.b
        return (block + 1) * self.xs[rem - 1]

    def head(self, count):
        return [self[self.m + i] for i in range(count)]

    def __repr__(self):
        if self.values is not None:
            return f"Schedule(m={self.m}, values={self.values!r})"
        return f"Schedule(m={self.m}, nu={self.nu}, b={self.b}, xs={self.xs})"


class BranchedSF:
    """An m-branched S-fraction with coefficient schedule ``alpha``."""

    def __init__(self, m, alpha):
        if m < 1:
            raise ContFracError("branch count m must be >= 1")
        if not isinstance(alpha, Schedule):
            alpha = Schedule(m, values=alpha)
        if alpha.m != m:
            raise ContFracError(f"schedule is for m = {alpha.m}, not {m}")
        self.m = m
        self.alpha = alpha

    @property
    def ring(self):
        return self.alpha.ring

    def __repr__(self):
        return f"BranchedSF(m={self.m}, alpha={self.alpha!r})"


def bsf_series(b: BranchedSF, N) -> Series:
    """Order-N expansion by memoized depth-bounded recursion."""
    m, alpha, ring = b.m, b.alpha, b.ring
    memo = {}
    one = lambda w: Series.const(1, w, ring)  # noqa: E731

    def F(j, w):
        if w == 0:
            return one(0)
        key = (j, w)
        if key in memo:
            return memo[key]
        a = alpha[j]
        if a == 0:
            out = one(w)
        else:
            prod = F(j + 1, w - 1)
            for i in range(2, m + 1):
                prod = prod * F(j + i, w - 1)
            shifted = Series([0] + list(prod.coeffs), w, ring)
            out = div(one(w), one(w) - shifted * a)
        memo[key] = out
        return out

    return F(m, N)


# production-matrix route --------------------------------------------------

def _lower_factor(x, size, ring):
    zero, unit = _embed(Fraction(0), ring), _embed(Fraction(1), ring)
    return RingMatrix([[unit if i == j else (i * x if i == j + 1 else zero)
                        for j in range(size)] for i in range(size)])


def _upper_factor(nu, b, size, ring):
    zero, unit = _embed(Fraction(0), ring), _embed(Fraction(1), ring)
    return RingMatrix([[nu + i * b if i == j else (unit if j == i + 1 else zero)
                        for j in range(size)] for i in range(size)])


def bsf_production_matrix(nu, b, xs, N) -> ProductionMatrix:
    """``P = L(x_1) ... L(x_m) U(nu, b)`` truncated to (N+1)x(N+1).

    ``L(x)`` has unit diagonal and subdiagonal ``x, 2x, 3x, ...``; ``U`` has
    diagonal ``nu, nu+b, nu+2b, ...`` and unit superdiagonal. Every factor is
    banded so the truncated product is exact.
    """
    xs = list(xs)
    if not xs:
        raise ContFracError("need at least one x (m >= 1)")
    parts = [_coerce(nu, "nu"), _coerce(b, "b")] + [_coerce(x, "x") for x in xs]
    ring = _join_ring(parts)
    nu, b = _embed(parts[0], ring), _embed(parts[1], ring)
    size = N + 1
    P = _upper_factor(nu, b, size, ring)
    for x in reversed(parts[2:]):
        P = _lower_factor(_embed(x, ring), size, ring) @ P
    return ProductionMatrix(P.rows, (), (), scaled=True)


def series_from_production(P: RingMatrix, N) -> Series:
    """``sum_n (P^n)_{0,0} t^n`` through order N."""
    size = P.shape[0]
    zero = P[0, 0] * 0
    v = [zero] * size
    v[0] = zero + 1
    out = [v[0]]
    for _ in range(N):
        v = [sum((v[i] * P[i, j] for i in range(size) if v[i] != 0 and P[i, j] != 0), zero)
             for j in range(size)]
        out.append(v[0])
    return Series(out, N)


def bsf_series_via_production(nu, b, xs, N) -> Series:
    return series_from_production(bsf_production_matrix(nu, b, xs, N), N)


def periodic_sf(nu, b, xs) -> BranchedSF:
    return BranchedSF(len(xs), Schedule(len(xs), nu=nu, b=b, xs=xs))


# named schedules ------------------------------------------------------------

def schedule_sheffer(lam, q, xs) -> Schedule:
    """``(lam+q, x_1..x_m, lam+q, 2x_1..2x_m, ...)``."""
    xs = [_coerce(x, "x") for x in xs]
    if not xs:
        raise ContFracError("xs must be nonempty (m >= 1)")
    if any(not isinstance(x, Poly) and x < 0 for x in xs):
        raise ContFracError("xs must be nonnegative")
    nu = _coerce(lam, "lambda") + _coerce(q, "q")
    return Schedule(len(xs), nu=nu, b=0, xs=xs)


def schedule_sheffer_star(lam, q, xs) -> Schedule:
    """``(q lam + 1, q x_1..q x_m, q lam + 1, 2q x_1..2q x_m, ...)``."""
    xs = [_coerce(x, "x") for x in xs]
    if not xs:
        raise ContFracError("xs must be nonempty (m >= 1)")
    if any(not isinstance(x, Poly) and x < 0 for x in xs):
        raise ContFracError("xs must be nonnegative")
    q = _coerce(q, "q")
    lam = _coerce(lam, "lambda")
    ring = _join_ring([q, lam] + xs)
    q, lam = _embed(q, ring), _embed(lam, ring)
    return Schedule(len(xs), nu=q * lam + 1, b=0, xs=[q * _embed(x, ring) for x in xs], ring=ring)


def schedule_lah(a, b, c, lam, q) -> Schedule:
    """Generalized Lah (d = 0): m = a + 1, ``(c(q+lam), b x m, c(q+lam), 2b x m, ...)``."""
    a = int(a)
    if a < 0:
        raise ContFracError("a must be a nonnegative integer")
    c = _coerce(c, "c")
    nu = c * (_coerce(q, "q") + _coerce(lam, "lambda"))
    return Schedule(a + 1, nu=nu, b=0, xs=[_coerce(b, "b")] * (a + 1))


def schedule_lah_star(a, b, c, lam, q) -> Schedule:
    """Reciprocal Lah (d = 0): ``(c(1+q lam), bq x m, c(1+q lam), 2bq x m, ...)``."""
    a = int(a)
    q = _coerce(q, "q")
    lam = _coerce(lam, "lambda")
    ring = _join_ring([q, lam])
    q, lam = _embed(q, ring), _embed(lam, ring)
    nu = _coerce(c, "c") * (q * lam + 1)
    return Schedule(a + 1, nu=nu, b=0, xs=[_coerce(b, "b") * q] * (a + 1), ring=ring)


def schedule_hankel(nu, b, xs) -> Schedule:
    """``(nu, x_1..x_m, nu+b, 2x_1..2x_m, nu+2b, ...)``."""
    xs = [_coerce(x, "x") for x in xs]
    if not xs:
        raise ContFracError("xs must be nonempty (m >= 1)")
    return Schedule(len(xs), nu=_coerce(nu, "nu"), b=_coerce(b, "b"), xs=xs)


NAMED_SCHEDULES = {
    "sheffer": schedule_sheffer,
    "sheffer_star": schedule_sheffer_star,
    "lah": schedule_lah,
    "lah_star": schedule_lah_star,
    "hankel": schedule_hankel,
}


def schedule_series(s: Schedule, N, method="recursive") -> Series:
    """Expand a schedule by either route (production needs a periodic schedule)."""
    if method == "recursive":
        return bsf_series(BranchedSF(s.m, s), N)
    if method == "production":
        if not s.periodic:
            raise ContFracError("production route needs a periodic schedule")
        return bsf_series_via_production(s.nu, s.b, s.xs, N)
    raise ContFracError(f"unknown method {method!r}")

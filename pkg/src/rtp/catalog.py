"""Named triangles and polynomial families, each with redundant realizations.

Every family can be built several ways (recurrence, exponential Riordan
array, closed form, brute-force oracle on small n). ``cross_check`` builds
all of them and raises :class:`RealizationMismatch` on any disagreement.

Symbolic parameters are written ``"sym"`` and become polynomial variables
(``lambda`` for lambda, ``gamma`` for gamma). Everything else is a Rational.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement, permutations, product
from math import comb, factorial

from rtp.arith import (NEG_INF, Poly, binomial, parse_rational,
                       real_root_count_with_multiplicity)
from rtp.positivity import Certificate, RingMatrix, diag_scale
from rtp.riordan import (ExpRiordan, inverse, matrix_row_polys, production_matrix,
                         triangle)
from rtp.series import Series, div, exp_series, log_series, pow_rational

SYM = "sym"
ORACLE_MAX_N = 10
# b, d values used when a claim is symbolic in them (lambda, q stay symbolic)
SAMPLE_GRID = (Fraction(1, 2), Fraction(1), Fraction(2), Fraction(3))


class RealizationMismatch(AssertionError):
    """Two realizations of the same family disagree (an internal bug)."""


class DomainError(ValueError):
    """Parameters outside the family's hypotheses."""


@dataclass
class FamilySpec:
    family: str
    params: dict = field(default_factory=dict)
    N: int = 10
    mode: str = "recurrence"

    def to_json(self):
        out = {"family": self.family, "N": self.N, "mode": self.mode}
        for k, v in sorted(self.params.items()):
            out[k] = _param_json(v)
        return out


def _param_json(v):
    if isinstance(v, Poly):
        return SYM
    if isinstance(v, Fraction):
        return str(v) if v.denominator != 1 else v.numerator
    if isinstance(v, (list, tuple)):
        return [_param_json(x) for x in v]
    return v


@dataclass
class Triangle:
    entries: RingMatrix
    family: FamilySpec

    def __post_init__(self):
        if not self.entries.is_lower_triangular():
            raise RealizationMismatch(f"{self.family.family}: result is not lower-triangular")

    @property
    def N(self):
        return self.entries.shape[0] - 1

    @property
    def row_polys(self):
        return matrix_row_polys(self.entries, "q")

    def __getitem__(self, idx):
        return self.entries[idx]

    def row(self, n):
        return self.entries.row(n)

    def __eq__(self, other):
        if isinstance(other, Triangle):
            return self.entries == other.entries
        if isinstance(other, RingMatrix):
            return self.entries == other
        return NotImplemented


# parameter handling ---------------------------------------------------------

def param(x, name):
    """Rational, or the polynomial variable ``name`` if ``x`` is ``"sym"``."""
    if isinstance(x, Poly):
        return x
    if isinstance(x, str):
        if x == SYM:
            return Poly.var(name, (name,))
        return parse_rational(x)
    if isinstance(x, float):
        raise DomainError(f"{name}: floats are not accepted, use a rational string")
    return Fraction(x)


def _rational(x, name):
    v = param(x, name)
    if isinstance(v, Poly):
        raise DomainError(f"{name} must be bound to a rational here")
    return v


def _nat(x, name, positive=False):
    v = _rational(x, name)
    if v.denominator != 1 or v < (1 if positive else 0):
        kind = "positive integer" if positive else "nonnegative integer"
        raise DomainError(f"{name} must be a {kind}, got {v}")
    return int(v)


def _ring_of(values):
    for v in values:
        if isinstance(v, Poly):
            return v.vars
    return None


def _unify(rows):
    """Coerce a grid of Fractions/Polys into one ring."""
    ring = None
    for r in rows:
        ring = ring or _ring_of(r)
    if ring is None:
        return RingMatrix([[Fraction(x) for x in r] for r in rows])
    return RingMatrix([[x if isinstance(x, Poly) else Poly.const(x, ring) for x in r]
                       for r in rows])


def _zeros(N):
    return [[Fraction(0)] * (N + 1) for _ in range(N + 1)]


# generic recurrences --------------------------------------------------------

def three_term(N, left, mid, right):
    """``T[n][k] = left T[n-1][k-1] + mid T[n-1][k] + right T[n-1][k+1]``.

    Applied for every n >= 1 and 0 <= k <= n, with ``T[0][0] = 1``.
    """
    T = _zeros(N)
    T[0][0] = Fraction(1)
    for n in range(1, N + 1):
        prev = T[n - 1]
        for k in range(n + 1):
            v = 0
            if k >= 1 and prev[k - 1] != 0:
                v = v + left(n, k) * prev[k - 1]
            if k <= n - 1 and prev[k] != 0:
                v = v + mid(n, k) * prev[k]
            if k + 1 <= n - 1 and prev[k + 1] != 0:
                v = v + right(n, k) * prev[k + 1]
            T[n][k] = v
    return _unify(T)


def reciprocal_three_term(N, same, down1, down2):
    """``T*[n][k] = same T*[n-1][k] + down1 T*[n-1][k-1] + down2 T*[n-1][k-2]``."""
    T = _zeros(N)
    T[0][0] = Fraction(1)
    for n in range(1, N + 1):
        prev = T[n - 1]
        for k in range(n + 1):
            v = 0
            if k <= n - 1 and prev[k] != 0:
                v = v + same(n, k) * prev[k]
            if 1 <= k <= n and prev[k - 1] != 0:
                v = v + down1(n, k) * prev[k - 1]
            if k >= 2 and prev[k - 2] != 0:
                v = v + down2(n, k) * prev[k - 2]
            T[n][k] = v
    return _unify(T)


def two_term_triangle(a, b, N):
    """``E[n][k] = (a0 n + a1 k + a2) E[n-1][k] + (b0 n + b1 k + b2) E[n-1][k-1]``."""
    a0, a1, a2 = (Fraction(x) for x in a)
    b0, b1, b2 = (Fraction(x) for x in b)
    return three_term(N, lambda n, k: b0 * n + b1 * k + b2,
                      lambda n, k: a0 * n + a1 * k + a2,
                      lambda n, k: 0)


def production_recurrence(R: ExpRiordan, N):
    """Rows of an ERA generated one at a time as ``R_n = R_{n-1} P``."""
    P = production_matrix(R, N)
    T = _zeros(N)
    T[0][0] = R.g[0]
    for n in range(1, N + 1):
        for k in range(n + 1):
            acc = 0
            for i in range(n):
                if T[n - 1][i] != 0 and P[i, k] != 0:
                    acc = acc + T[n - 1][i] * P[i, k]
            T[n][k] = acc
    return _unify(T)


def _era_triangle(g, f, N, scaled=False, general=False):
    return triangle(ExpRiordan(g, f, general=general), N, scaled=scaled)


def _check_modes(family, results):
    modes = list(results)
    base = results[modes[0]]
    for m in modes[1:]:
        other = results[m]
        if base.entries != other.entries:
            n, k = _first_diff(base.entries, other.entries)
            raise RealizationMismatch(
                f"{family}: {modes[0]} and {m} disagree at ({n},{k}): "
                f"{base.entries[n, k]} vs {other.entries[n, k]}")
    return base


def _first_diff(A, B):
    for n in range(A.shape[0]):
        for k in range(A.shape[1]):
            if A[n, k] != B[n, k]:
                return n, k
    return None


def _build(family, N, mode, params, builders):
    if mode not in builders:
        raise DomainError(f"{family}: unknown realization {mode!r}; have {sorted(builders)}")
    spec = FamilySpec(family, dict(params), N, mode)
    return Triangle(builders[mode](), spec)


def _verify(family, N, params, builders, modes=None, oracle_max=ORACLE_MAX_N):
    out = {}
    for mode in modes or builders:
        if mode == "oracle" and N > oracle_max:
            continue
        out[mode] = _build(family, N, mode, params, builders)
    return _check_modes(family, out)


# cycle index ----------------------------------------------------------------

def cycle_index(N, xs=None, lambdas=None):
    """``A_n`` from ``n A_n = sum_j x_j A_{n-j}`` and ``P_n = n! A_n``.

    With ``lambdas`` the power sums ``x_n = sum lambda_i^n`` are used and
    ``A_n`` is checked against the complete homogeneous symmetric polynomial.
    """
    if (xs is None) == (lambdas is None):
        raise DomainError("give exactly one of xs or lambdas")
    if lambdas is not None:
        lambdas = [_rational(x, "lambda_i") for x in lambdas]
        if any(x < 0 for x in lambdas):
            raise DomainError("lambdas must be nonnegative")
        xs = [sum((x ** n for x in lambdas), Fraction(0)) for n in range(1, N + 1)]
    xs = [param(x, "x") for x in xs]
    if len(xs) < N:
        raise DomainError(f"need x_1..x_{N}, got {len(xs)}")
    A = [Fraction(1)]
    for n in range(1, N + 1):
        acc = 0
        for j in range(1, n + 1):
            acc = acc + xs[j - 1] * A[n - j]
        A.append(acc / n if isinstance(acc, Poly) else Fraction(acc) / n)
    if lambdas is not None:
        for n in range(N + 1):
            h = _complete_homogeneous(lambdas, n)
            if h != A[n]:
                raise RealizationMismatch(f"cycle index: A_{n} = {A[n]} but h_{n} = {h}")
    P = [factorial(n) * a for n, a in enumerate(A)]
    return A, P


def _complete_homogeneous(xs, n):
    total = Fraction(0)
    for combo in combinations_with_replacement(range(len(xs)), n):
        term = Fraction(1)
        for i in combo:
            term *= xs[i]
        total += term
    return total


# set partitions (oracles) ---------------------------------------------------

def _set_partitions(n):
    """Block-size lists of all set partitions of [n] (restricted growth)."""
    def rec(i, sizes):
        if i == n:
            yield sizes
            return
        for b in range(len(sizes)):
            sizes[b] += 1
            yield from rec(i + 1, sizes)
            sizes[b] -= 1
        sizes.append(1)
        yield from rec(i + 1, sizes)
        sizes.pop()
    yield from rec(0, [])


def weighted_partition_row(n, weights):
    """Entry k: sum over partitions of [n] into k blocks of ``prod weights[|B|]``."""
    if n > ORACLE_MAX_N:
        raise DomainError(f"oracle capped at n = {ORACLE_MAX_N}")
    row = [Fraction(0)] * (n + 1)
    if n == 0:
        row[0] = Fraction(1)
        return row
    for sizes in _set_partitions(n):
        w = Fraction(1)
        for s in sizes:
            w *= weights.get(s, 0)
            if not w:
                break
        row[len(sizes)] += w
    return row


def weighted_partition_count(n, k, weights):
    if k < 0 or k > n:
        return Fraction(0)
    return weighted_partition_row(n, weights)[k]


def bessel2_oracle(n, k):
    """Number of partitions of [n] into k blocks of size at most 2."""
    return int(weighted_partition_count(n, k, {1: 1, 2: 1}))


# Bessel numbers of the second kind -----------------------------------------

def gen_bessel2(a, b, c, N, mode="recurrence", verify=False):
    """Triangle ``B[n][k] = a B[n-1][k-1] + 2b(n-1) B[n-2][k-1] + 3c(n-1)(n-2) B[n-3][k-1]``."""
    a, b, c = (_rational(x, n) for x, n in ((a, "a"), (b, "b"), (c, "c")))
    if min(a, b, c) < 0:
        raise DomainError("a, b, c must be nonnegative")
    params = {"a": a, "b": b, "c": c}

    def rec():
        B = _zeros(N)
        B[0][0] = Fraction(1)
        for n in range(1, N + 1):
            for k in range(1, n + 1):
                v = a * B[n - 1][k - 1]
                if n >= 2:
                    v += 2 * b * (n - 1) * B[n - 2][k - 1]
                if n >= 3:
                    v += 3 * c * (n - 1) * (n - 2) * B[n - 3][k - 1]
                B[n][k] = v
        return _unify(B)

    def era():
        return _era_triangle(Series.const(1, N), Series([0, a, b, c], N), N)

    def formula():
        B = _zeros(N)
        B[0][0] = Fraction(1)
        for n in range(1, N + 1):
            for k in range(1, n + 1):
                s = Fraction(0)
                for i in range(k + 1):
                    j = n - k - i
                    if j < 0 or j > i:
                        continue
                    s += a ** (k - i) * c ** j * b ** (i - j) * comb(k, i) * comb(i, j)
                B[n][k] = s * Fraction(factorial(n), factorial(k))
        return _unify(B)

    def oracle():
        w = {1: a, 2: 2 * b, 3: 6 * c}
        rows = [weighted_partition_row(n, w) for n in range(N + 1)]
        return _unify([r + [Fraction(0)] * (N - n) for n, r in enumerate(rows)])

    builders = {"recurrence": rec, "era": era, "formula": formula, "oracle": oracle}
    if verify:
        return _verify("gen_bessel2", N, params, builders)
    return _build("gen_bessel2", N, mode, params, builders)


# generalized Bessel (first kind) and Lah ------------------------------------

def _falling_product(start, step, n, sign):
    """``prod_{m<n} (start + sign*step*m)``."""
    out = Fraction(1)
    for m in range(n):
        out *= start + sign * step * m
    return out


def _bessel1_params(a, b, c, d, lam):
    a = _nat(a, "a", positive=True)
    b, c, d = _rational(b, "b"), _rational(c, "c"), _rational(d, "d")
    if c <= 0:
        raise DomainError("c must be positive")
    if b == 0:
        raise DomainError("b must be nonzero")
    ad = a * d
    if ad.denominator != 1 or ad < 0:
        raise DomainError(f"a*d must be a nonnegative integer, got {ad}")
    return a, b, c, d, param(lam, "lambda")


def _lah_params(a, b, c, d, lam):
    a = _nat(a, "a")
    b, c, d = _rational(b, "b"), _rational(c, "c"), _rational(d, "d")
    if c <= 0:
        raise DomainError("c must be positive")
    if b == 0:
        raise DomainError("b must be nonzero")
    return a, b, c, d, param(lam, "lambda")


def _double_sum_formula(N, a, b, c, d, lam, lah, tilde):
    T = _zeros(N)
    ad = a * d
    for n in range(N + 1):
        for k in range(n + 1):
            total = 0
            for j in range(n - k + 1):
                inner = Fraction(0)
                for i in range(k + j + 1):
                    if lah:
                        # a^n (-(i+ad)/a)_n = (-1)^n prod (i + ad + a m)
                        sign = -1 if (k + j - i) % 2 else 1
                        prod = _falling_product(i + ad, a, n, 1)
                    else:
                        # a^n ((i-ad)/a)_n = prod (i - ad - a m)
                        sign = -1 if (n - i) % 2 else 1
                        prod = _falling_product(i - ad, a, n, -1)
                    inner += sign * comb(k + j, i) * prod
                if not inner:
                    continue
                coef = inner * b ** (n - k - j) * c ** (k + j) / factorial(j)
                total = total + (coef * lam ** j if j else coef)
            if not tilde:
                total = total / factorial(k) if isinstance(total, Poly) else Fraction(total, factorial(k))
            T[n][k] = total
    return _unify(T)


def _g_lambda_f(g, f, lam, N):
    if isinstance(lam, Poly):
        ring = lam.vars
        g, f = g.with_ring(ring), f.with_ring(ring)
    return g * exp_series(f * lam) if lam != 0 else g, f


def bessel1_series(a, b, c, d, lam, N):
    """``(g e^{lam f}, f)`` with ``g = (1-abt)^{-d}``, ``f = (c/b)(1-(1-abt)^{1/a})``."""
    a, b, c, d, lam = _bessel1_params(a, b, c, d, lam)
    base = Series([1, -a * b], N)
    g = pow_rational(base, -d)
    f = (Series.const(1, N) - pow_rational(base, Fraction(1, a))) * (c / b)
    return _g_lambda_f(g, f, lam, N)


def lah_series(a, b, c, d, lam, N):
    """``(g e^{lam f}, f)`` with ``f = (c/b)((1-abt)^{-1/a} - 1)``; a = 0 is the limit."""
    a, b, c, d, lam = _lah_params(a, b, c, d, lam)
    if a == 0:
        g = Series.const(1, N)
        e = exp_series(Series([0, b], N))
        f = (e - 1) * (c / b)
    else:
        base = Series([1, -a * b], N)
        g = pow_rational(base, -d)
        f = (pow_rational(base, Fraction(-1, a)) - 1) * (c / b)
    return _g_lambda_f(g, f, lam, N)


def _four_term_builders(N, a, b, c, d, lam, lah, tilde):
    sgn = 1 if lah else -1

    def mid(n, k):
        return a * b * (n - 1) + sgn * b * k + a * b * d + c * lam

    def rec():
        if tilde:
            return three_term(N, lambda n, k: c * k, mid, lambda n, k: sgn * b * lam)
        return three_term(N, lambda n, k: c, mid, lambda n, k: sgn * b * lam * (k + 1))

    def era():
        g, f = (lah_series if lah else bessel1_series)(a, b, c, d, lam, N)
        return _era_triangle(g, f, N, scaled=tilde)

    def formula():
        return _double_sum_formula(N, a, b, c, d, lam, lah, tilde)

    return {"recurrence": rec, "era": era, "formula": formula}


def gen_bessel1(a, b, c, d, lam, N, mode="recurrence", verify=False, tilde=False):
    """Generalized Bessel triangle of the first kind (optionally k!-scaled)."""
    a, b, c, d, lam = _bessel1_params(a, b, c, d, lam)
    params = {"a": a, "b": b, "c": c, "d": d, "lambda": lam}
    builders = _four_term_builders(N, a, b, c, d, lam, lah=False, tilde=tilde)
    name = "gen_bessel1_tilde" if tilde else "gen_bessel1"
    if verify:
        return _verify(name, N, params, builders)
    return _build(name, N, mode, params, builders)


def gen_bessel1_tilde(a, b, c, d, lam, N, mode="recurrence", verify=False):
    return gen_bessel1(a, b, c, d, lam, N, mode, verify, tilde=True)


def gen_lah(a, b, c, d, lam, N, mode="recurrence", verify=False, tilde=False):
    """Generalized Lah triangle (optionally k!-scaled)."""
    a, b, c, d, lam = _lah_params(a, b, c, d, lam)
    params = {"a": a, "b": b, "c": c, "d": d, "lambda": lam}
    builders = _four_term_builders(N, a, b, c, d, lam, lah=True, tilde=tilde)
    name = "gen_lah_tilde" if tilde else "gen_lah"
    if verify:
        return _verify(name, N, params, builders)
    return _build(name, N, mode, params, builders)


def gen_lah_tilde(a, b, c, d, lam, N, mode="recurrence", verify=False):
    return gen_lah(a, b, c, d, lam, N, mode, verify, tilde=True)


def reciprocal_triangle(T):
    """Row reversal ``T*[n][k] = T[n][n-k]``."""
    M = T.entries if isinstance(T, Triangle) else T
    if not M.is_lower_triangular():
        raise DomainError("reciprocal needs a lower-triangular matrix")
    nr = M.shape[0]
    zero = M[0, 1] if M.shape[1] > 1 else M[0, 0] * 0
    rows = [[M[n, n - k] if k <= n else zero for k in range(M.shape[1])] for n in range(nr)]
    fam = T.family if isinstance(T, Triangle) else FamilySpec("matrix", {}, nr - 1)
    spec = FamilySpec(fam.family + "*", dict(fam.params), fam.N, fam.mode)
    return Triangle(RingMatrix(rows), spec)


def reciprocal_recurrence(family, a, b, c, d, lam, N):
    """The reciprocal triangle built directly from its own recurrence."""
    lah = family == "gen_lah"
    if family not in ("gen_lah", "gen_bessel1"):
        raise DomainError(f"no reciprocal recurrence for {family!r}")
    a, b, c, d, lam = (_lah_params if lah else _bessel1_params)(a, b, c, d, lam)
    sgn = 1 if lah else -1
    M = reciprocal_three_term(
        N,
        lambda n, k: c,
        lambda n, k: a * b * (n - 1) + sgn * b * (n - k) + a * b * d + c * lam,
        lambda n, k: sgn * b * lam * (n - k + 1))
    return Triangle(M, FamilySpec(family + "*", {"a": a, "b": b, "c": c, "d": d,
                                                 "lambda": lam}, N, "recurrence"))


def bessel1(N, mode="recurrence", verify=False):
    """Signless Bessel numbers ``b[n][k] = (2n-k-2) b[n-1][k] + b[n-1][k-1]``."""
    return gen_bessel1(2, 1, 1, 0, 0, N, mode, verify)


def lah(N, mode="recurrence", verify=False):
    return gen_lah(1, 1, 1, 0, 0, N, mode, verify)


def stirling2(N, mode="recurrence", verify=False):
    return gen_lah(0, 1, 1, 0, 0, N, mode, verify)


# Callan ---------------------------------------------------------------------

def double_factorial(n):
    """n!! with (-1)!! = 1."""
    if n < -1:
        raise DomainError(f"{n}!! undefined")
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def callan_H(N, mode="recurrence", verify=False):
    """``H[n][k] = k! C(2n-k-1, k-1) (2n-2k-1)!!``."""
    if N > 20:
        raise DomainError("callan_H is capped at N = 20")

    def rec():
        return three_term(N, lambda n, k: k, lambda n, k: 2 * n - k - 2, lambda n, k: 0)

    def formula():
        H = _zeros(N)
        H[0][0] = Fraction(1)
        for n in range(1, N + 1):
            for k in range(1, n + 1):
                H[n][k] = Fraction(factorial(k) * comb(2 * n - k - 1, k - 1)
                                   * double_factorial(2 * n - 2 * k - 1))
        return _unify(H)

    def era():
        f = Series.const(1, N) - pow_rational(Series([1, -2], N), Fraction(1, 2))
        return _era_triangle(Series.const(1, N), f, N, scaled=True)

    builders = {"recurrence": rec, "formula": formula, "era": era}
    if verify:
        return _verify("callan", N, {}, builders)
    return _build("callan", N, mode, {}, builders)


def callan_row_sums(N):
    T = callan_H(N)
    return [sum(T.row(n)) for n in range(N + 1)]


# idempotent numbers and trees -------------------------------------------------

def _idempotent_era(N):
    return ExpRiordan(Series.const(1, N), Series([0, 1], N) * exp_series(Series([0, 1], N)))


def _count_idempotent_maps(n, k):
    if n > 7:
        raise DomainError("idempotent-map oracle capped at n = 7")
    count = 0
    for f in product(range(n), repeat=n):
        if all(f[f[i]] == f[i] for i in range(n)) and sum(f[i] == i for i in range(n)) == k:
            count += 1
    return Fraction(count)


def idempotent_triangle(N, mode="formula", verify=False):
    """``I[n][k] = C(n,k) k^(n-k)``, the triangle of ``exp(q t e^t)``."""
    if N > 20:
        raise DomainError("idempotent_triangle is capped at N = 20")

    def formula():
        return _unify([[Fraction(comb(n, k) * k ** (n - k)) if k <= n else Fraction(0)
                        for k in range(N + 1)] for n in range(N + 1)])

    def era():
        return triangle(_idempotent_era(N), N)

    def rec():
        big = _idempotent_era(N + 1)
        return production_recurrence(big, N)

    def oracle():
        return _unify([[_count_idempotent_maps(n, k) if k <= n else Fraction(0)
                        for k in range(N + 1)] for n in range(N + 1)])

    builders = {"formula": formula, "era": era, "recurrence": rec, "oracle": oracle}
    if verify:
        return _verify("idempotent", N, {}, builders, oracle_max=6)
    return _build("idempotent", N, mode, {}, builders)


def tree_triangle(N, mode="formula", verify=False, signed=True):
    """``(-1)^(n-k) C(n-1,k-1) n^(n-k)``: the inverse of the idempotent triangle."""
    if N > 20:
        raise DomainError("tree_triangle is capped at N = 20")
    sgn = (lambda n, k: -1 if (n - k) % 2 else 1) if signed else (lambda n, k: 1)

    def formula():
        rows = []
        for n in range(N + 1):
            row = []
            for k in range(N + 1):
                if n == 0:
                    row.append(Fraction(int(k == 0)))
                elif 1 <= k <= n:
                    row.append(Fraction(sgn(n, k) * comb(n - 1, k - 1) * n ** (n - k)))
                else:
                    row.append(Fraction(0))
            rows.append(row)
        return _unify(rows)

    def inverse_matrix():
        I = idempotent_triangle(N).entries
        M = lower_triangular_inverse(I)
        if not signed:
            M = RingMatrix([[abs(x) for x in r] for r in M.rows])
        return M

    def era():
        M = triangle(inverse(_idempotent_era(N)), N)
        if not signed:
            M = RingMatrix([[abs(x) for x in r] for r in M.rows])
        return M

    builders = {"formula": formula, "inverse": inverse_matrix, "era": era}
    params = {"signed": signed}
    if verify:
        return _verify("tree", N, params, builders)
    return _build("tree", N, mode, params, builders)


def tree_row_polys(N):
    """Unsigned tree polynomials from ``exp(-q W(-t))``."""
    W = _idempotent_inverse_f(N)
    ring = ("q",)
    q = Poly.var("q", ring)
    neg_w_neg = Series([(-1) ** (n + 1) * c for n, c in enumerate(W.coeffs)], N).with_ring(ring)
    E = exp_series(neg_w_neg * q)
    return [factorial(n) * E[n] for n in range(N + 1)]


def _idempotent_inverse_f(N):
    return inverse(_idempotent_era(N)).f


def lower_triangular_inverse(M: RingMatrix) -> RingMatrix:
    """Exact inverse of a lower-triangular matrix with unit-free diagonal."""
    n = M.shape[0]
    X = _zeros(n - 1)
    for j in range(n):
        if M[j, j] == 0:
            raise ZeroDivisionError("singular lower-triangular matrix")
        X[j][j] = Fraction(1) / M[j, j]
        for i in range(j + 1, n):
            acc = Fraction(0)
            for k in range(j, i):
                acc += M[i, k] * X[k][j]
            X[i][j] = -acc / M[i, i]
    return RingMatrix(X)


# Laguerre and rook ----------------------------------------------------------

def laguerre_triangle(alpha, N, mode="formula", verify=False):
    """Signless Laguerre triangle ``C(n+alpha, n-k) n!/k!``."""
    alpha = _rational(alpha, "alpha")
    if alpha < -1:
        raise DomainError("alpha must be >= -1")
    params = {"alpha": alpha}

    def formula():
        return _unify([[binomial(n + alpha, n - k) * Fraction(factorial(n), factorial(k))
                        if k <= n else Fraction(0) for k in range(N + 1)]
                       for n in range(N + 1)])

    def era():
        g = pow_rational(Series([1, -1], N), -(alpha + 1))
        f = div(Series([0, 1], N), Series([1, -1], N))
        return _era_triangle(g, f, N)

    def rec():
        return gen_lah(1, 1, 1, alpha + 1, 0, N, mode="recurrence").entries

    builders = {"formula": formula, "era": era, "recurrence": rec}
    if verify:
        return _verify("laguerre", N, params, builders)
    return _build("laguerre", N, mode, params, builders)


def rook_triangle(N):
    """``C(n,k)^2 k!``; its row polynomials are the rook polynomials."""
    M = _unify([[Fraction(comb(n, k) ** 2 * factorial(k)) if k <= n else Fraction(0)
                 for k in range(N + 1)] for n in range(N + 1)])
    return Triangle(M, FamilySpec("rook", {}, N, "formula"))


def rook_polys(N):
    return rook_triangle(N).row_polys


# Eulerian -------------------------------------------------------------------

def _excedance_count(N):
    if N > 8:
        raise DomainError("permutation oracle capped at n = 8")
    rows = _zeros(N)
    rows[0][0] = Fraction(1)
    for n in range(1, N + 1):
        for p in permutations(range(n)):
            exc = sum(p[i] > i for i in range(n))
            rows[n][exc + 1] += 1
    return _unify(rows)


def eulerian_triangle(N, mode="recurrence", verify=False):
    """``<n,k> = k <n-1,k> + (n-k+1) <n-1,k-1>``; k-1 excedances."""
    if N > 20:
        raise DomainError("eulerian_triangle is capped at N = 20")

    def rec():
        return two_term_triangle((0, 1, 0), (1, -1, 1), N)

    def formula():
        E = _zeros(N)
        E[0][0] = Fraction(1)
        for n in range(1, N + 1):
            for k in range(1, n + 1):
                E[n][k] = Fraction(sum((-1) ** j * comb(n + 1, j) * (k - j) ** n
                                       for j in range(k + 1)))
        return _unify(E)

    def egf():
        # sum_n (sum_k <n,k> q^(k-1)) t^n/n! = 1 / (1 - sum_n (q-1)^(n-1) t^n/n!)
        ring = ("q",)
        u = Poly.var("q", ring) - 1
        inner = Series([Poly.const(0, ring)] + [u ** (n - 1) / factorial(n) for n in range(1, N + 1)], N)
        E = div(Series.const(1, N, ring), Series.const(1, N, ring) - inner)
        rows = _zeros(N)
        rows[0][0] = Fraction(1)
        for n in range(1, N + 1):
            p = E[n] * factorial(n)
            for k in range(1, n + 1):
                rows[n][k] = p.coeff_in("q", k - 1).constant_term()
        return _unify(rows)

    builders = {"recurrence": rec, "formula": formula, "egf": egf,
                "oracle": lambda: _excedance_count(N)}
    if verify:
        return _verify("eulerian", N, {}, builders, oracle_max=8)
    return _build("eulerian", N, mode, {}, builders)


def pascal_triangle(N):
    M = two_term_triangle((0, 0, 1), (0, 0, 1), N)
    return Triangle(M, FamilySpec("pascal", {}, N, "recurrence"))


def identity_triangle(N):
    return Triangle(RingMatrix.identity(N + 1), FamilySpec("identity", {}, N, "formula"))


# binomial families ------------------------------------------------------------

def _binom0(top, k):
    """Integer binomial with C(n, k) = 0 unless 0 <= k <= n."""
    if k < 0 or top < 0 or k > top:
        return 0
    return comb(top, k)


def binomial_triangle(which, c, d, N, m=None, n=None, bare=False, mode="formula",
                      verify=False):
    """The two binomial families.

    ``which="first"`` (fixed ``m``, rows ``n``): ``C(n,k) C(n+ck, m+dk) (n-k)!``
    with ``d > 0``, ``d >= c``. ``which="second"`` (fixed ``n``, rows ``m``):
    ``C(m,k) C(n+ck, m+dk) (m-k)!`` with ``d <= -1``, ``c >= 0``. ``bare``
    drops the factorial factors (``C(n+ck, m+dk)`` below the diagonal).
    """
    c, d = _rational(c, "c"), _rational(d, "d")
    if c.denominator != 1 or d.denominator != 1:
        raise DomainError("c and d must be integers")
    c, d = int(c), int(d)
    if which == "first":
        if m is None:
            raise DomainError("family 'first' needs m")
        m = _nat(m, "m")
        if not (d > 0 and d >= c):
            raise DomainError("family 'first' needs d > 0 and d >= c")
        fixed = m
    elif which == "second":
        if n is None:
            raise DomainError("family 'second' needs n")
        n = _nat(n, "n")
        if not (d <= -1 and c >= 0):
            raise DomainError("family 'second' needs d <= -1 and c >= 0")
        fixed = n
    else:
        raise DomainError(f"unknown binomial family {which!r}")
    params = {"which": which, "c": c, "d": d, ("m" if which == "first" else "n"): fixed,
              "bare": bare}

    def entry(row, k):
        if which == "first":
            return comb(row, k) * _binom0(row + c * k, m + d * k) * factorial(row - k)
        return comb(row, k) * _binom0(n + c * k, row + d * k) * factorial(row - k)

    def finish(M):
        if bare:
            return diag_scale(M, [Fraction(1, factorial(i)) for i in range(N + 1)],
                              [factorial(k) for k in range(N + 1)])
        return M

    def formula():
        return finish(_unify([[Fraction(entry(r, k)) if k <= r else Fraction(0)
                               for k in range(N + 1)] for r in range(N + 1)]))

    def era():
        if which == "first":
            one_minus = Series([1, -1], N)
            g = Series([0] * m + [1], N) * one_minus ** (-(m + 1))
            f = Series([0] * (d - c) + [1], N) * one_minus ** (-d)
            M = triangle(ExpRiordan(g, f, general=(d == c)), N)
        else:
            g = pow_rational(Series([1, 1], N), n)
            f = Series([0] * (-d) + [1], N) * pow_rational(Series([1, 1], N), c)
            M = triangle(ExpRiordan(g, f), N)
        # the matrix is lower-triangular by definition; compare on k <= row
        M = RingMatrix([[M[r, k] if k <= r else Fraction(0) for k in range(N + 1)]
                        for r in range(N + 1)])
        return finish(M)

    builders = {"formula": formula, "era": era}
    if verify:
        return _verify("binomial", N, params, builders)
    return _build("binomial", N, mode, params, builders)


# partial Bell, logarithmic, fractional ----------------------------------------

def _integer_partitions(n, k, max_part=None):
    """Partitions of n into exactly k parts, as descending tuples."""
    max_part = n if max_part is None else max_part
    if k == 0:
        if n == 0:
            yield ()
        return
    for first in range(min(n - k + 1, max_part), 0, -1):
        for rest in _integer_partitions(n - first, k - 1, first):
            yield (first,) + rest


def bell_partial(xs, N, mode="era", verify=False):
    """Partial Bell polynomials ``B[n][k](x_1, x_2, ...)``."""
    xs = [param(x, "x") for x in xs]
    if len(xs) < N:
        raise DomainError(f"need x_1..x_{N}, got {len(xs)}")
    if any(isinstance(x, Poly) for x in xs):
        raise DomainError("partial Bell inputs must be rationals")
    params = {"xs": list(xs[:N])}

    def era():
        f = Series.from_egf([0] + xs[:N], N)
        return _era_triangle(Series.const(1, N), f, N)

    def rec():
        B = _zeros(N)
        B[0][0] = Fraction(1)
        for n in range(1, N + 1):
            for k in range(1, n + 1):
                s = Fraction(0)
                for j in range(1, n - k + 2):
                    s += comb(n - 1, j - 1) * xs[j - 1] * B[n - j][k - 1]
                B[n][k] = s
        return _unify(B)

    def formula():
        B = _zeros(N)
        B[0][0] = Fraction(1)
        for n in range(1, N + 1):
            for k in range(1, n + 1):
                s = Fraction(0)
                for parts in _integer_partitions(n, k):
                    mult = {}
                    for p in parts:
                        mult[p] = mult.get(p, 0) + 1
                    term = Fraction(factorial(n))
                    for i, ci in mult.items():
                        term *= Fraction(xs[i - 1], factorial(i)) ** ci / factorial(ci)
                    s += term
                B[n][k] = s
        return _unify(B)

    builders = {"era": era, "recurrence": rec, "formula": formula}
    if verify:
        return _verify("bell_partial", N, params, builders)
    return _build("bell_partial", N, mode, params, builders)


def _q_triangle(S: Series, N, row0):
    """Triangle ``n! [t^n q^k] S`` with S over the ring ('q',)."""
    T = _zeros(N)
    for n in range(N + 1):
        p = S[n] * factorial(n)
        for k in range(n + 1):
            T[n][k] = p.coeff_in("q", k).constant_term()
    T[0] = [Fraction(0)] * (N + 1)
    T[0][0] = Fraction(row0)
    return _unify(T)


def _check_f(f: Series, N):
    if f.order < N:
        raise DomainError(f"f has order {f.order} < {N}")
    if f[0] != 0:
        raise DomainError("f(0) must be 0")
    if f.ring is not None:
        raise DomainError("f must have rational coefficients")


def logarithmic_triangle(f: Series, N):
    """``L[n][k]`` from ``-log(1 - q f) = sum L_n(q) t^n/n!``; L[0][0] = 1."""
    _check_f(f, N)
    ring = ("q",)
    q = Poly.var("q", ring)
    S = -log_series(Series.const(1, N, ring) - f.truncate(N).with_ring(ring) * q)
    return Triangle(_q_triangle(S, N, 1), FamilySpec("logarithmic", {}, N, "series"))


def fractional_triangle(f: Series, N):
    """``Ltilde[n][k]`` from ``1/(1 - q f)``."""
    _check_f(f, N)
    ring = ("q",)
    q = Poly.var("q", ring)
    one = Series.const(1, N, ring)
    S = div(one, one - f.truncate(N).with_ring(ring) * q)
    return Triangle(_q_triangle(S, N, 1), FamilySpec("fractional", {}, N, "series"))


def log_frac_identity(f: Series, N):
    """Check ``Ltilde[n][k] = k L[n][k] = k! S[n][k](f, 1)`` for n >= 1."""
    L = logarithmic_triangle(f, N).entries
    F = fractional_triangle(f, N).entries
    S = triangle(ExpRiordan(Series.const(1, N), f.truncate(N)), N)
    for n in range(1, N + 1):
        for k in range(n + 1):
            if not (F[n, k] == k * L[n, k] == factorial(k) * S[n, k]):
                raise RealizationMismatch(
                    f"log/frac identity fails at ({n},{k}): {F[n, k]}, {k * L[n, k]}, "
                    f"{factorial(k) * S[n, k]}")
    return True


# real roots -----------------------------------------------------------------

def real_roots_check(T, lam=0) -> Certificate:
    """Every row polynomial has only real roots, all ``<= -lam`` (exact Sturm)."""
    lam = _rational(lam, "lambda")
    if isinstance(T, Triangle):
        rows = [T.row(n) for n in range(T.N + 1)]
    elif isinstance(T, RingMatrix):
        rows = [T.row(n) for n in range(T.shape[0])]
    else:
        rows = []
        for p in T:
            rows.append(p.univariate_coeffs(p.vars[0]) if isinstance(p, Poly) else list(p))
    checked = 0
    for n, coeffs in enumerate(rows):
        coeffs = [x.constant_term() if isinstance(x, Poly) and x.is_constant() else x
                  for x in coeffs]
        if any(isinstance(x, Poly) for x in coeffs):
            raise DomainError("real_roots_check needs rational row polynomials")
        coeffs = [Fraction(x) for x in coeffs]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        if not coeffs:
            continue
        deg = len(coeffs) - 1
        checked += 1
        if deg == 0:
            continue
        found = real_root_count_with_multiplicity(coeffs, NEG_INF, -lam)
        if found != deg:
            witness = {"row": n, "degree": deg, "roots_le_bound": found}
            return Certificate("real-rooted", (len(rows),), 0, "fail", witness,
                               {"lambda": lam}, checked, note="exact Sturm count")
    return Certificate("real-rooted", (len(rows),), 0, "pass", None, {"lambda": lam},
                       checked, note="exact Sturm count")


# registry -------------------------------------------------------------------

# parameter sets sampled by the cross-realization suite
PARAM_GRID = {
    "gen_bessel2": [(1, Fraction(1, 2), 0), (1, 1, 1), (2, 1, 0), (1, 0, 0),
                    (Fraction(1, 2), 3, 2)],
    "gen_bessel1": [(2, 1, 1, 0, 0), (1, 1, 1, 0, 0), (2, 1, 1, Fraction(1, 2), 0),
                    (3, Fraction(1, 2), 2, Fraction(1, 3), 1), (2, 1, 1, 0, SYM),
                    (1, 2, 1, 1, SYM), (2, -1, 3, 1, Fraction(1, 2))],
    "gen_lah": [(1, 1, 1, 0, 0), (0, 1, 1, 0, 0), (2, 1, 1, 1, Fraction(1, 2)),
                (1, 2, 3, 2, SYM), (1, 1, 1, 0, SYM), (3, Fraction(1, 2), 1, Fraction(1, 3), 2),
                (0, 2, 1, 0, SYM)],
    "laguerre": [-1, 0, Fraction(1, 2), 1, 3],
    "bell_partial": [tuple(factorial(j) for j in range(1, 12)), (1,) * 11,
                     (1, 2) + (0,) * 9, tuple(Fraction(1, j) for j in range(1, 12))],
}


FAMILIES = {
    "gen_bessel2": lambda N, p, **kw: gen_bessel2(p.get("a", 1), p.get("b", Fraction(1, 2)),
                                                  p.get("c", 0), N, **kw),
    "bessel2": lambda N, p, **kw: gen_bessel2(1, Fraction(1, 2), 0, N, **kw),
    "gen_bessel1": lambda N, p, **kw: gen_bessel1(p.get("a", 2), p.get("b", 1), p.get("c", 1),
                                                  p.get("d", 0), p.get("lambda", 0), N, **kw),
    "gen_bessel1_tilde": lambda N, p, **kw: gen_bessel1_tilde(
        p.get("a", 2), p.get("b", 1), p.get("c", 1), p.get("d", 0), p.get("lambda", 0), N, **kw),
    "bessel1": lambda N, p, **kw: bessel1(N, **kw),
    "callan": lambda N, p, **kw: callan_H(N, **kw),
    "gen_lah": lambda N, p, **kw: gen_lah(p.get("a", 1), p.get("b", 1), p.get("c", 1),
                                          p.get("d", 0), p.get("lambda", 0), N, **kw),
    "gen_lah_tilde": lambda N, p, **kw: gen_lah_tilde(
        p.get("a", 1), p.get("b", 1), p.get("c", 1), p.get("d", 0), p.get("lambda", 0), N, **kw),
    "lah": lambda N, p, **kw: lah(N, **kw),
    "stirling2": lambda N, p, **kw: stirling2(N, **kw),
    "laguerre": lambda N, p, **kw: laguerre_triangle(p.get("alpha", 0), N, **kw),
    "idempotent": lambda N, p, **kw: idempotent_triangle(N, **kw),
    "tree": lambda N, p, **kw: tree_triangle(N, signed=p.get("signed", True), **kw),
    "eulerian": lambda N, p, **kw: eulerian_triangle(N, **kw),
    "binomial": lambda N, p, **kw: binomial_triangle(p.get("which", "first"), p.get("c", 0),
                                                     p.get("d", 1), N, m=p.get("m"),
                                                     n=p.get("n"), bare=p.get("bare", False),
                                                     **kw),
    "bell_partial": lambda N, p, **kw: bell_partial(p["xs"], N, **kw),
    "rook": lambda N, p, **kw: rook_triangle(N),
    "pascal": lambda N, p, **kw: pascal_triangle(N),
    "identity": lambda N, p, **kw: identity_triangle(N),
}


def build_family(name, N, params=None, mode=None, verify=False):
    """Construct a registered family by name."""
    if name not in FAMILIES:
        raise DomainError(f"unknown family {name!r}; known: {', '.join(sorted(FAMILIES))}")
    kw = {}
    if mode is not None:
        kw["mode"] = mode
    if verify:
        kw["verify"] = True
    return FAMILIES[name](N, dict(params or {}), **kw)


def cross_check(name, N, params=None):
    """Build every realization; raises :class:`RealizationMismatch` on disagreement."""
    return build_family(name, N, params, verify=True)

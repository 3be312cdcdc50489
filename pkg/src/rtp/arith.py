"""Exact scalars, multivariate polynomials, determinants and Sturm counts.

Scalars are :class:`fractions.Fraction` (plain ``int`` is accepted wherever a
scalar is). :class:`Poly` is a sparse polynomial over the rationals in an
explicitly declared, ordered tuple of indeterminates.
"""
from __future__ import annotations

from fractions import Fraction
from functools import reduce
from itertools import combinations
from math import lcm

from rtp import kernels

Rational = Fraction


def parse_rational(s) -> Fraction:
    """Parse ``"p/q"``, ``"p"``, an int or a Fraction into a Fraction."""
    if isinstance(s, Fraction):
        return s
    if isinstance(s, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(s, int):
        return Fraction(s)
    if isinstance(s, str):
        try:
            return Fraction(s.strip())
        except ValueError:
            raise ValueError(f"not a rational: {s!r}") from None
    raise TypeError(f"not a rational: {s!r}")


def format_rational(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def is_scalar(x) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


class Poly:
    """Polynomial with rational coefficients in declared variables.

    Exponent vectors are dense with respect to ``vars``. Arithmetic between
    polynomials requires identical variable tuples; use :meth:`extend` to
    embed into a larger ring.
    """

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, vars, terms=None):
        self.vars = tuple(vars)
        if len(set(self.vars)) != len(self.vars):
            raise ValueError(f"duplicate variables in {self.vars}")
        clean = {}
        if terms:
            n = len(self.vars)
            for exp, c in terms.items():
                exp = tuple(exp)
                if len(exp) != n or any(e < 0 for e in exp):
                    raise ValueError(f"bad exponent {exp} for variables {self.vars}")
                if c:
                    clean[exp] = Fraction(c)
        self.terms = clean
        self._hash = None

    # construction -------------------------------------------------------
    @classmethod
    def const(cls, c, vars):
        vars = tuple(vars)
        return cls(vars, {(0,) * len(vars): c})

    @classmethod
    def var(cls, name, vars):
        vars = tuple(vars)
        exp = tuple(1 if v == name else 0 for v in vars)
        if name not in vars:
            raise ValueError(f"{name!r} not among {vars}")
        return cls(vars, {exp: 1})

    @classmethod
    def from_univariate(cls, coeffs, var, vars=None):
        vars = tuple(vars) if vars else (var,)
        idx = vars.index(var)
        terms = {}
        for e, c in enumerate(coeffs):
            exp = [0] * len(vars)
            exp[idx] = e
            terms[tuple(exp)] = c
        return cls(vars, terms)

    def lift(self, x):
        """Coerce a scalar or polynomial into this polynomial's ring."""
        if isinstance(x, Poly):
            if x.vars != self.vars:
                raise ValueError(f"ring mismatch: {x.vars} vs {self.vars}")
            return x
        if is_scalar(x):
            return Poly.const(x, self.vars)
        return NotImplemented

    def extend(self, vars):
        """Embed into the ring over ``vars`` (a superset of ``self.vars``)."""
        vars = tuple(vars)
        missing = [v for v in self.vars if v not in vars]
        if missing:
            raise ValueError(f"cannot embed {self.vars} into {vars}")
        pos = [vars.index(v) for v in self.vars]
        out = {}
        for exp, c in self.terms.items():
            e = [0] * len(vars)
            for p, k in zip(pos, exp):
                e[p] = k
            out[tuple(e)] = c
        return Poly(vars, out)

    # inspection ---------------------------------------------------------
    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * len(self.vars), Fraction(0))

    def degree(self, var=None):
        if not self.terms:
            return -1
        if var is None:
            return max(sum(e) for e in self.terms)
        i = self.vars.index(var)
        return max(e[i] for e in self.terms)

    def coeff_nonneg(self):
        return all(c >= 0 for c in self.terms.values())

    def negative_terms(self):
        return sorted((e, c) for e, c in self.terms.items() if c < 0)

    def monomial_str(self, exp):
        parts = []
        for v, e in zip(self.vars, exp):
            if e == 1:
                parts.append(v)
            elif e:
                parts.append(f"{v}^{e}")
        return "*".join(parts) or "1"

    # arithmetic ---------------------------------------------------------
    def __neg__(self):
        return Poly(self.vars, {e: -c for e, c in self.terms.items()})

    def __pos__(self):
        return self

    def __add__(self, other):
        other = self.lift(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return Poly(self.vars, out)

    __radd__ = __add__

    def __sub__(self, other):
        other = self.lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self.lift(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if is_scalar(other):
            if not other:
                return Poly(self.vars)
            return Poly(self.vars, {e: c * other for e, c in self.terms.items()})
        other = self.lift(other)
        if other is NotImplemented:
            return other
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Poly(self.vars, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if is_scalar(other):
            if not other:
                raise ZeroDivisionError("polynomial divided by zero")
            inv = 1 / Fraction(other)
            return self * inv
        other = self.lift(other)
        if other is NotImplemented:
            return other
        if other.is_constant():
            return self / other.constant_term()
        return self.exact_div(other)

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only nonnegative integer powers of polynomials")
        result = Poly.const(1, self.vars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def exact_div(self, other):
        """Quotient when ``other`` divides ``self`` exactly; raises otherwise."""
        other = self.lift(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        lead_e = max(other.terms)
        lead_c = other.terms[lead_e]
        rem = dict(self.terms)
        quot = {}
        while rem:
            e = max(rem)
            diff = tuple(a - b for a, b in zip(e, lead_e))
            if any(d < 0 for d in diff):
                raise ArithmeticError("polynomial division is not exact")
            c = rem[e] / lead_c
            quot[diff] = c
            for oe, oc in other.terms.items():
                k = tuple(a + b for a, b in zip(oe, diff))
                v = rem.get(k, 0) - c * oc
                if v:
                    rem[k] = v
                else:
                    rem.pop(k, None)
        return Poly(self.vars, quot)

    # comparison ---------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Poly):
            if other.vars != self.vars:
                return self.is_constant() and other.is_constant() and \
                    self.constant_term() == other.constant_term()
            return self.terms == other.terms
        if is_scalar(other):
            return self.is_constant() and self.constant_term() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.constant_term())
            else:
                self._hash = hash((self.vars, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # evaluation ---------------------------------------------------------
    def subs(self, values):
        """Substitute scalars for some variables.

        Returns a Poly over the remaining variables, or a Fraction if none
        remain.
        """
        keep = [i for i, v in enumerate(self.vars) if v not in values]
        drop = [(i, Fraction(values[v])) for i, v in enumerate(self.vars) if v in values]
        new_vars = tuple(self.vars[i] for i in keep)
        out = {}
        for e, c in self.terms.items():
            for i, x in drop:
                c = c * x ** e[i]
            if c:
                k = tuple(e[i] for i in keep)
                out[k] = out.get(k, 0) + c
        if not new_vars:
            return out.get((), Fraction(0))
        return Poly(new_vars, out)

    def univariate_coeffs(self, var):
        """Coefficient list (lowest first) of a polynomial in ``var`` alone."""
        i = self.vars.index(var)
        if any(e[j] for e in self.terms for j in range(len(self.vars)) if j != i):
            raise ValueError(f"polynomial involves variables other than {var!r}")
        deg = self.degree(var)
        coeffs = [Fraction(0)] * (deg + 1)
        for e, c in self.terms.items():
            coeffs[e[i]] = c
        return coeffs

    def coeff_in(self, var, k):
        """Coefficient of ``var**k`` as a Poly over the same variables."""
        i = self.vars.index(var)
        out = {}
        for e, c in self.terms.items():
            if e[i] == k:
                ne = list(e)
                ne[i] = 0
                out[tuple(ne)] = c
        return Poly(self.vars, out)

    # serialization ------------------------------------------------------
    def to_json(self):
        return {
            "vars": list(self.vars),
            "terms": [{"exp": list(e), "coef": format_rational(c)}
                      for e, c in sorted(self.terms.items())],
        }

    @classmethod
    def from_json(cls, obj):
        return cls(obj["vars"], {tuple(t["exp"]): parse_rational(t["coef"])
                                 for t in obj["terms"]})

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=lambda e: (-sum(e), [-x for x in e])):
            c = self.terms[e]
            mono = self.monomial_str(e)
            if mono == "1":
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def is_nonneg(x) -> bool:
    """Nonnegativity of a scalar, or coefficientwise for a Poly."""
    if isinstance(x, Poly):
        return x.coeff_nonneg()
    return x >= 0


def poly_is_coeff_nonneg(p) -> bool:
    return is_nonneg(p)


def to_json_value(x):
    if isinstance(x, Poly):
        return x.to_json()
    return format_rational(x)


def from_json_value(obj):
    if isinstance(obj, dict):
        return Poly.from_json(obj)
    return parse_rational(obj)


def common_vars(values):
    """Variable tuple shared by all Poly values (None if all scalar)."""
    found = None
    for x in values:
        if isinstance(x, Poly):
            if found is None:
                found = x.vars
            elif x.vars != found:
                raise ValueError(f"ring mismatch: {x.vars} vs {found}")
    return found


# determinants -----------------------------------------------------------

def _rational_det(rows):
    # Clear denominators row by row, run the integer kernel, undo the scaling.
    scale = 1
    int_rows = []
    for row in rows:
        den = reduce(lcm, (Fraction(x).denominator for x in row), 1)
        scale *= den
        int_rows.append([int(Fraction(x) * den) for x in row])
    return Fraction(kernels.det_int(int_rows), scale)


def _expansion_det(rows):
    n = len(rows)
    memo = {}

    def minor(r, cols):
        # determinant of rows r.. with the given remaining columns
        if r == n:
            return 1
        key = (r, cols)
        if key in memo:
            return memo[key]
        total = 0
        for pos, c in enumerate(cols):
            a = rows[r][c]
            if a == 0:
                continue
            sub = minor(r + 1, cols[:pos] + cols[pos + 1:])
            term = a * sub
            total = total + term if pos % 2 == 0 else total - term
        memo[key] = total
        return total

    return minor(0, tuple(range(n)))


def _poly_bareiss(rows):
    n = len(rows)
    m = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * pivot - m[i][k] * m[k][j]
                m[i][j] = num.exact_div(prev) if isinstance(num, Poly) and isinstance(prev, Poly) \
                    else num / prev
        prev = pivot
    return m[n - 1][n - 1] if sign > 0 else -m[n - 1][n - 1]


EXPANSION_LIMIT = 8


def det_exact(M):
    """Exact determinant of a square matrix over Q or a polynomial ring.

    ``M`` is a RingMatrix or a list of rows.
    """
    rows = [list(r) for r in getattr(M, "rows", M)]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return Fraction(1)
    vars = common_vars(x for r in rows for x in r)
    if vars is None:
        return _rational_det(rows)
    rows = [[x if isinstance(x, Poly) else Poly.const(x, vars) for x in r] for r in rows]
    if n <= EXPANSION_LIMIT:
        d = _expansion_det(rows)
    else:
        d = _poly_bareiss(rows)
    return d if isinstance(d, Poly) else Poly.const(d, vars)


def cofactor_det(rows):
    """Plain Laplace expansion; reference oracle for small matrices."""
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    total = 0
    for j in range(n):
        sub = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = rows[0][j] * cofactor_det(sub)
        total = total + term if j % 2 == 0 else total - term
    return total


# univariate polynomials and Sturm sequences -----------------------------

class _Infinity:
    __slots__ = ("sign",)

    def __init__(self, sign):
        self.sign = sign

    def __repr__(self):
        return "+inf" if self.sign > 0 else "-inf"


POS_INF = _Infinity(1)
NEG_INF = _Infinity(-1)


def up_trim(p):
    p = [Fraction(c) for c in p]
    while p and p[-1] == 0:
        p.pop()
    return p


def up_eval(p, x):
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def up_derivative(p):
    return [i * c for i, c in enumerate(p)][1:]


def up_divmod(a, b):
    a = up_trim(a)
    b = up_trim(b)
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    r = list(a)
    while len(r) >= len(b) and r:
        shift = len(r) - len(b)
        c = r[-1] / b[-1]
        q[shift] = c
        for i, bc in enumerate(b):
            r[i + shift] -= c * bc
        r = up_trim(r)
    return q, r


def up_gcd(a, b):
    a, b = up_trim(a), up_trim(b)
    while b:
        _, r = up_divmod(a, b)
        a, b = b, r
    if not a:
        return a
    return [c / a[-1] for c in a]


def square_free_factors(p):
    """Yun's algorithm: list of (factor, multiplicity), monic factors."""
    p = up_trim(p)
    if len(p) <= 1:
        return []
    out = []
    dp = up_derivative(p)
    a = up_gcd(p, dp)
    b, _ = up_divmod(p, a)
    c, _ = up_divmod(dp, a)
    d = [x - y for x, y in _pad(c, up_derivative(b))]
    i = 1
    while len(up_trim(b)) > 1:
        a = up_gcd(b, d)
        b, _ = up_divmod(b, a)
        c, _ = up_divmod(d, a)
        if len(up_trim(a)) > 1:
            out.append((a, i))
        d = [x - y for x, y in _pad(c, up_derivative(b))]
        i += 1
    return out


def _pad(a, b):
    n = max(len(a), len(b))
    return zip(list(a) + [0] * (n - len(a)), list(b) + [0] * (n - len(b)))


def sturm_sequence(p):
    seq = [up_trim(p), up_trim(up_derivative(p))]
    while seq[-1]:
        _, r = up_divmod(seq[-2], seq[-1])
        if not r:
            break
        seq.append([-c for c in r])
    return [s for s in seq if s]


def _sign_at(p, x):
    if isinstance(x, _Infinity):
        lead = p[-1]
        s = 1 if lead > 0 else -1
        if x.sign < 0 and (len(p) - 1) % 2:
            s = -s
        return s
    v = up_eval(p, x)
    return (v > 0) - (v < 0)


def _variations(seq, x):
    signs = [s for s in (_sign_at(p, x) for p in seq) if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _check_endpoint(x):
    if isinstance(x, _Infinity):
        return x
    return Fraction(x)


def sturm_real_root_count(p, lo=NEG_INF, hi=POS_INF):
    """Number of distinct real roots of ``p`` in ``(lo, hi]``.

    ``p`` is a coefficient list (lowest degree first) or a univariate Poly.
    """
    if isinstance(p, Poly):
        if len(p.vars) != 1:
            raise ValueError("Sturm counting needs a univariate polynomial")
        p = p.univariate_coeffs(p.vars[0])
    p = up_trim(p)
    if not p:
        raise ValueError("zero polynomial has infinitely many roots")
    lo, hi = _check_endpoint(lo), _check_endpoint(hi)
    if _as_key(lo) >= _as_key(hi):
        raise ValueError("need lo < hi")
    if len(p) == 1:
        return 0
    g = up_gcd(p, up_derivative(p))
    sf, _ = up_divmod(p, g)
    seq = sturm_sequence(sf)
    return _variations(seq, lo) - _variations(seq, hi)


def _as_key(x):
    if isinstance(x, _Infinity):
        return (x.sign, 0)
    return (0, x)


def real_root_count_with_multiplicity(p, lo=NEG_INF, hi=POS_INF):
    """Real roots in ``(lo, hi]`` counted with multiplicity."""
    if isinstance(p, Poly):
        p = p.univariate_coeffs(p.vars[0])
    return sum(m * sturm_real_root_count(f, lo, hi) for f, m in square_free_factors(p))


def binomial(x, k):
    """Generalized binomial coefficient x(x-1)...(x-k+1)/k! (0 for k < 0)."""
    if k < 0:
        return Fraction(0)
    num = Fraction(1)
    for i in range(k):
        num *= Fraction(x) - i
    den = 1
    for i in range(2, k + 1):
        den *= i
    return num / den


def all_minor_index_sets(nr, nc, r):
    """Index sets of all minors of order <= r in deterministic lex order."""
    for k in range(1, min(r, nr, nc) + 1):
        cols = list(combinations(range(nc), k))
        for rs in combinations(range(nr), k):
            for cs in cols:
                yield rs, cs

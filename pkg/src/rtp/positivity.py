"""Minor-based certification of total positivity and its relatives.

Every check enumerates all minors of order <= r of a finite truncation, in
lexicographic order of (order, row set, column set), and stops at the first
violation. Infinite-order claims are only ever certified as TP_r on a
truncation, so certificates say "desk-scale evidence", never "proof".
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import lcm

from rtp import kernels
from rtp.arith import (Poly, all_minor_index_sets, det_exact, format_rational,
                       is_nonneg, is_scalar, to_json_value)

EVIDENCE = "desk-scale evidence"


class RingMatrix:
    """Dense rectangular matrix over Q or a polynomial ring."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        rows = tuple(tuple(r) for r in rows)
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged matrix")
        self.rows = rows

    @classmethod
    def zeros(cls, nr, nc):
        return cls([[Fraction(0)] * nc for _ in range(nr)])

    @classmethod
    def identity(cls, n):
        return cls([[Fraction(int(i == j)) for j in range(n)] for i in range(n)])

    @property
    def shape(self):
        return (len(self.rows), len(self.rows[0]) if self.rows else 0)

    def __getitem__(self, idx):
        i, j = idx
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, RingMatrix):
            return NotImplemented
        return self.shape == other.shape and all(
            a == b for ra, rb in zip(self.rows, other.rows) for a, b in zip(ra, rb))

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        body = ",\n".join("  [" + ", ".join(str(x) for x in r) + "]" for r in self.rows)
        return "RingMatrix([\n" + body + "\n])"

    def __matmul__(self, other):
        n, m = self.shape
        m2, p = other.shape
        if m != m2:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = list(zip(*other.rows))
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                acc = 0
                for a, b in zip(r, c):
                    if a != 0 and b != 0:
                        acc = acc + a * b
                row.append(acc if not isinstance(acc, int) else Fraction(acc))
            out.append(row)
        return RingMatrix(out)

    def submatrix(self, rows, cols):
        return RingMatrix([[self.rows[i][j] for j in cols] for i in rows])

    def block(self, nr, nc, r0=0, c0=0):
        return RingMatrix([row[c0:c0 + nc] for row in self.rows[r0:r0 + nr]])

    def transpose(self):
        return RingMatrix(zip(*self.rows))

    def map(self, fn):
        return RingMatrix([[fn(x) for x in r] for r in self.rows])

    def row(self, i):
        return list(self.rows[i])

    def is_lower_triangular(self):
        return all(self.rows[i][j] == 0 for i in range(len(self.rows))
                   for j in range(i + 1, len(self.rows[i])))

    def is_symbolic(self):
        return any(isinstance(x, Poly) and not x.is_constant() for r in self.rows for x in r)

    def to_json(self):
        return [[to_json_value(x) for x in r] for r in self.rows]


@dataclass
class Certificate:
    property: str
    size: tuple
    r: int
    verdict: str
    witness: dict | None = None
    bindings: dict = field(default_factory=dict)
    checked: int = 0
    note: str = EVIDENCE

    @property
    def passed(self):
        return self.verdict == "pass"

    def __bool__(self):
        return self.passed

    def to_json(self):
        out = {
            "property": self.property,
            "size": list(self.size),
            "r": self.r,
            "verdict": self.verdict,
            "witness": self.witness,
            "bindings": {k: format_rational(v) if is_scalar(v) else v
                         for k, v in sorted(self.bindings.items())},
            "checked": self.checked,
            "note": self.note,
        }
        return out


# builders ---------------------------------------------------------------

def _zero_like(seq):
    for x in seq:
        if isinstance(x, Poly):
            return Poly.const(0, x.vars)
    return Fraction(0)


def toeplitz(seq, N):
    """(N+1)x(N+1) Toeplitz truncation ``[a_{i-j}]``; missing terms are 0."""
    seq = list(seq)
    if not seq:
        raise ValueError("toeplitz needs at least one term")
    zero = _zero_like(seq)
    return RingMatrix([[seq[i - j] if 0 <= i - j < len(seq) else zero
                        for j in range(N + 1)] for i in range(N + 1)])


def hankel(seq, N):
    """(N+1)x(N+1) Hankel truncation ``[a_{i+j}]``."""
    seq = list(seq)
    if len(seq) < 2 * N + 1:
        raise ValueError(f"hankel of size {N + 1} needs {2 * N + 1} terms, got {len(seq)}")
    return RingMatrix([[seq[i + j] for j in range(N + 1)] for i in range(N + 1)])


def hankel_shifted(seq, N):
    """(N+1)x(N+1) truncation of ``[a_{i+j+1}]``."""
    seq = list(seq)
    if len(seq) < 2 * N + 2:
        raise ValueError(f"shifted hankel of size {N + 1} needs {2 * N + 2} terms, got {len(seq)}")
    return RingMatrix([[seq[i + j + 1] for j in range(N + 1)] for i in range(N + 1)])


# checks -----------------------------------------------------------------

def _as_rational_rows(M):
    rows = []
    for r in M.rows:
        row = []
        for x in r:
            if isinstance(x, Poly):
                if not x.is_constant():
                    return None
                x = x.constant_term()
            row.append(Fraction(x))
        rows.append(row)
    return rows


def is_tp_r(M: RingMatrix, r: int, prop="TP_r", bindings=None) -> Certificate:
    """All minors of order <= r nonnegative (rational entries)."""
    if r < 1:
        raise ValueError("minor order r must be >= 1")
    rows = _as_rational_rows(M)
    if rows is None:
        raise TypeError("is_tp_r needs rational entries; use is_coeffwise_tp_r")
    # positive row scaling leaves every minor's sign unchanged
    int_rows = []
    for row in rows:
        den = reduce(lcm, (x.denominator for x in row), 1)
        int_rows.append([int(x * den) for x in row])
    nr, nc = M.shape
    hit = kernels.first_negative_minor(int_rows, r) if nr and nc else None
    total = kernels.count_minors(nr, nc, r)
    if hit is None:
        return Certificate(prop, M.shape, r, "pass", None, dict(bindings or {}), total)
    rs, cs, _ = hit
    value = det_exact(M.submatrix(rs, cs))
    witness = {"rows": list(rs), "cols": list(cs), "value": format_rational(value)}
    return Certificate(prop, M.shape, r, "fail", witness, dict(bindings or {}))


def is_coeffwise_tp_r(M: RingMatrix, r: int, prop="coeffwise-TP_r", bindings=None) -> Certificate:
    """All minors of order <= r are polynomials with nonnegative coefficients."""
    if r < 1:
        raise ValueError("minor order r must be >= 1")
    if not M.is_symbolic():
        return is_tp_r(M, r, prop, bindings)
    nr, nc = M.shape
    count = 0
    for rs, cs in all_minor_index_sets(nr, nc, r):
        count += 1
        if len(rs) == 1:
            v = M.rows[rs[0]][cs[0]]
        else:
            v = det_exact(M.submatrix(rs, cs))
        if not is_nonneg(v):
            witness = {"rows": list(rs), "cols": list(cs), "value": to_json_value(v)}
            if isinstance(v, Poly):
                exp, c = v.negative_terms()[0]
                witness["monomial"] = v.monomial_str(exp)
                witness["coef"] = format_rational(c)
                witness["value_str"] = repr(v)
            return Certificate(prop, M.shape, r, "fail", witness, dict(bindings or {}), count)
    return Certificate(prop, M.shape, r, "pass", None, dict(bindings or {}), count)


def check_tp(M: RingMatrix, r: int, prop="TP_r", bindings=None) -> Certificate:
    """Dispatch to the rational or coefficientwise check."""
    if M.is_symbolic():
        return is_coeffwise_tp_r(M, r, prop, bindings)
    return is_tp_r(M, r, prop, bindings)


def is_pf_r(seq, N, r, bindings=None) -> Certificate:
    return check_tp(toeplitz(seq, N), r, "PF_r", bindings)


def is_sm_r(seq, N, r, bindings=None) -> Certificate:
    return check_tp(hankel(seq, N), r, "SM_r", bindings)


def revalidate(cert: Certificate, M: RingMatrix) -> bool:
    """Recompute a failing certificate's witness minor from scratch."""
    if cert.passed or cert.witness is None:
        return False
    w = cert.witness
    if "rows" not in w:
        return False
    v = det_exact(M.submatrix(w["rows"], w["cols"]))
    return not is_nonneg(v)


# log-convexity ------------------------------------------------------------

def lcx_operator(seq):
    """``L[a_i] = a_{i-1} a_{i+1} - a_i^2`` for i = 1 .. len-2."""
    seq = list(seq)
    if len(seq) < 3:
        raise ValueError("the log-convexity operator needs at least 3 terms")
    return [seq[i - 1] * seq[i + 1] - seq[i] * seq[i] for i in range(1, len(seq) - 1)]


def is_k_log_convex(seq, k, bindings=None) -> Certificate:
    """Iterates ``L^m`` for m <= k all coefficientwise nonnegative."""
    seq = list(seq)
    if k < 1:
        raise ValueError("k must be >= 1")
    if len(seq) < 2 * k + 1:
        raise ValueError(f"{k}-log-convexity needs {2 * k + 1} terms, got {len(seq)}")
    cur = seq
    checked = 0
    for m in range(1, k + 1):
        cur = lcx_operator(cur)
        for i, v in enumerate(cur):
            checked += 1
            if not is_nonneg(v):
                witness = {"iterate": m, "index": i + m, "value": to_json_value(v)}
                if isinstance(v, Poly):
                    witness["value_str"] = repr(v)
                return Certificate(f"{k}-log-convex", (len(seq),), k, "fail",
                                   witness, dict(bindings or {}), checked)
    return Certificate(f"{k}-log-convex", (len(seq),), k, "pass", None,
                       dict(bindings or {}), checked)


# transforms ---------------------------------------------------------------

def reciprocal_seq(polyseq, var="q"):
    """``P*_n(q) = q^n P_n(1/q)``; each P_n must have degree <= n in ``var``."""
    out = []
    for n, p in enumerate(polyseq):
        if not isinstance(p, Poly):
            if p != 0:
                raise ValueError(f"scalar entry {p} at index {n} has no variable {var!r}")
            out.append(p)
            continue
        i = p.vars.index(var)
        if p.degree(var) > n:
            raise ValueError(f"entry {n} has degree {p.degree(var)} > {n} in {var!r}")
        terms = {}
        for e, c in p.terms.items():
            ne = list(e)
            ne[i] = n - e[i]
            terms[tuple(ne)] = c
        out.append(Poly(p.vars, terms))
    return out


def diag_scale(M: RingMatrix, c, d):
    """Entry (n, k) becomes ``c_n d_k M_{n,k}``; scales must be positive."""
    nr, nc = M.shape
    c = [Fraction(x) for x in (c if c is not None else [1] * nr)]
    d = [Fraction(x) for x in (d if d is not None else [1] * nc)]
    if len(c) < nr or len(d) < nc:
        raise ValueError("not enough scale factors")
    if any(x <= 0 for x in c[:nr]) or any(x <= 0 for x in d[:nc]):
        raise ValueError("diagonal scale factors must be positive")
    return RingMatrix([[c[i] * d[j] * M.rows[i][j] for j in range(nc)] for i in range(nr)])


def window_sweep(M: RingMatrix, size, r, prop=None):
    """Check every contiguous ``size`` x ``size`` block; one certificate each."""
    nr, nc = M.shape
    if size > min(nr, nc):
        raise ValueError(f"window {size} larger than matrix {M.shape}")
    out = []
    for i in range(nr - size + 1):
        for j in range(nc - size + 1):
            cert = check_tp(M.block(size, size, i, j), r,
                            prop or ("coeffwise-TP_r" if M.is_symbolic() else "TP_r"),
                            {"row0": i, "col0": j})
            out.append(cert)
    return out

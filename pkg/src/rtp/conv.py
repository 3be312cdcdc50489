"""A-convolutions ``z_n = sum_k A[n][k] x_k y_{n-k}`` and SM-preservation probes.

Preservation of the Stieltjes moment property cannot be proved by sampling;
the probes here only look for counterexamples on a fixed library of known
moment sequences.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import comb, factorial

from rtp.arith import Poly
from rtp.positivity import Certificate, RingMatrix, hankel, is_sm_r, is_tp_r

Q_GRID = (Fraction(0), Fraction(1, 2), Fraction(1), Fraction(2))
DEFAULT_N = 6
DEFAULT_R = 3


@dataclass(frozen=True)
class SMSample:
    name: str
    term: object  # n -> Rational
    provenance: str

    def terms(self, count):
        return [Fraction(self.term(n)) for n in range(count)]


LIBRARY: dict[str, SMSample] = {}


def register_sample(sample: SMSample, N=DEFAULT_N, r=DEFAULT_R):
    """Add a sample after checking its Hankel truncation is TP_r."""
    cert = is_tp_r(hankel(sample.terms(2 * N + 1), N), r)
    if not cert.passed:
        raise ValueError(f"sample {sample.name!r} is not SM at N={N}, r={r}: {cert.witness}")
    LIBRARY[sample.name] = sample
    return sample


for _s in (
    SMSample("factorial", factorial, "moments of e^{-x} dx on [0, inf)"),
    SMSample("catalan", lambda n: comb(2 * n, n) // (n + 1),
             "moments of sqrt(x(4-x))/(2 pi) on [0, 4]"),
    SMSample("double_factorial_ratio", lambda n: factorial(2 * n) // factorial(n),
             "(2n)!/n! = 4^n (1/2)_n, moments of a gamma(1/2) law scaled by 4"),
    SMSample("constant", lambda n: 1, "point mass at 1"),
    SMSample("geometric2", lambda n: 2 ** n, "point mass at 2"),
    SMSample("tree_shifted", lambda n: (n + 1) ** n, "(n+1)^n = m^(m-1) at m = n+1"),
):
    register_sample(_s)


def library_samples(names=None):
    if names is None:
        return [LIBRARY[k] for k in sorted(LIBRARY)]
    return [LIBRARY[k] for k in names]


def _matrix(A):
    return A.entries if hasattr(A, "entries") else A


def a_convolution(A, xs, ys, N):
    """``z_n = sum_{k<=n} A[n][k] x_k y_{n-k}`` for n = 0..N."""
    M = _matrix(A)
    xs, ys = list(xs), list(ys)
    if len(xs) < N + 1 or len(ys) < N + 1:
        raise ValueError(f"need {N + 1} terms of x and y, got {len(xs)} and {len(ys)}")
    if M.shape[0] < N + 1:
        raise ValueError(f"triangle has {M.shape[0]} rows, need {N + 1}")
    out = []
    for n in range(N + 1):
        acc = 0
        for k in range(n + 1):
            a = M[n, k]
            if a != 0 and xs[k] != 0 and ys[n - k] != 0:
                acc = acc + a * xs[k] * ys[n - k]
        out.append(acc if isinstance(acc, Poly) else Fraction(acc))
    return out


def row_poly_values(A, q, count):
    """``A_n(q)`` for n < count at a rational q."""
    M = _matrix(A)
    q = Fraction(q)
    return [sum((M[n, k] * q ** k for k in range(n + 1)), Fraction(0)) for n in range(count)]


def sm_preservation_probe(A, library=None, N=DEFAULT_N, r=DEFAULT_R, name="A"):
    """SM checks of every ordered sample pair, plus the row-polynomial route.

    Returns the list of certificates: one per (x, y) pair with property
    ``SM_r``, then one per q in the grid with property ``rowpoly-SM_r``.
    """
    M = _matrix(A)
    if M.shape[0] < 2 * N + 1:
        raise ValueError(f"triangle needs {2 * N + 1} rows for an {N + 1}x{N + 1} Hankel check")
    if M.is_symbolic():
        raise ValueError("probe needs a rational triangle")
    samples = library_samples() if library is None else list(library)
    certs = []
    for sx, sy in product(samples, repeat=2):
        z = a_convolution(M, sx.terms(2 * N + 1), sy.terms(2 * N + 1), 2 * N)
        certs.append(is_sm_r(z, N, r, bindings={"triangle": name, "x": sx.name, "y": sy.name}))
    for q in Q_GRID:
        vals = row_poly_values(M, q, 2 * N + 1)
        cert = is_sm_r(vals, N, r, bindings={"triangle": name, "q": q})
        cert.property = "rowpoly-SM_r"
        certs.append(cert)
    return certs


def probe_consistent(certs):
    """If every row-polynomial check passes, every sample pair must pass too."""
    route = [c for c in certs if c.property == "rowpoly-SM_r"]
    pairs = [c for c in certs if c.property == "SM_r"]
    if route and all(c.passed for c in route):
        return all(c.passed for c in pairs)
    return True


def hadamard_probe(library=None, N=DEFAULT_N, r=DEFAULT_R):
    """Termwise products of sample pairs are again SM (desk scale)."""
    samples = library_samples() if library is None else list(library)
    certs = []
    for i, sx in enumerate(samples):
        for sy in samples[i:]:
            z = [a * b for a, b in zip(sx.terms(2 * N + 1), sy.terms(2 * N + 1))]
            cert = is_sm_r(z, N, r, bindings={"x": sx.name, "y": sy.name})
            cert.property = "hadamard-SM_r"
            certs.append(cert)
    return certs


def signed_pascal(N) -> RingMatrix:
    """``(-1)^(n-k) C(n,k)``: a triangle that does not preserve SM."""
    return RingMatrix([[Fraction((-1) ** (n - k) * comb(n, k)) if k <= n else Fraction(0)
                        for k in range(N + 1)] for n in range(N + 1)])


__all__ = [
    "SMSample", "LIBRARY", "Q_GRID", "register_sample", "library_samples", "a_convolution",
    "row_poly_values", "sm_preservation_probe", "probe_consistent", "hadamard_probe",
    "signed_pascal", "Certificate",
]

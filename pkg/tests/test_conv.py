from fractions import Fraction
from math import factorial

import pytest

from rtp.catalog import fractional_triangle, identity_triangle, pascal_triangle
from rtp.conv import (LIBRARY, SMSample, a_convolution, hadamard_probe, library_samples,
                      probe_consistent, register_sample, signed_pascal, sm_preservation_probe)
from rtp.series import Series

F = Fraction


def test_a_convolution_values():
    P = pascal_triangle(6)
    assert a_convolution(P, [1] * 7, [1] * 7, 6) == [2 ** n for n in range(7)]
    z = a_convolution(P, [factorial(k) for k in range(7)], [1] * 7, 3)
    assert z == [1, 2, 5, 16]
    x = [F(n + 3) for n in range(7)]
    assert a_convolution(identity_triangle(6), x, [2] * 7, 6) == [2 * v for v in x]


def test_library_validated():
    assert set(LIBRARY) == {"factorial", "catalan", "double_factorial_ratio", "constant",
                            "geometric2", "tree_shifted"}
    with pytest.raises(ValueError):
        register_sample(SMSample("bad", lambda n: n + 1, "arithmetic progression"))
    assert "bad" not in LIBRARY


def test_pascal_factorial_pair():
    certs = sm_preservation_probe(pascal_triangle(12), library_samples(["factorial"]), 6, 3)
    assert all(c.passed for c in certs)


def test_fractional_pair():
    f = Series([0] + [1] * 13, 13)
    Ft = fractional_triangle(f, 12)
    lib = [SMSample("one", lambda n: 1, "point mass"), LIBRARY["factorial"]]
    assert all(c.passed for c in sm_preservation_probe(Ft, lib, 6, 3))


def test_signed_pascal_fails():
    certs = sm_preservation_probe(signed_pascal(12), None, 6, 3)
    bad = [c for c in certs if not c.passed]
    assert bad
    assert probe_consistent(certs)


def test_hadamard():
    assert all(c.passed for c in hadamard_probe())


def test_probe_needs_rows():
    with pytest.raises(ValueError):
        sm_preservation_probe(pascal_triangle(5), None, 6, 3)

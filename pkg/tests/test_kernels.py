"""Both kernel backends must agree exactly, including witness order."""
import random
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rtp import _pykernels, kernels
from rtp.arith import cofactor_det

BACKENDS = [_pykernels]
try:
    from rtp import _ckernels
    BACKENDS.append(_ckernels)
except ImportError:  # pragma: no cover
    pass


@pytest.fixture(params=BACKENDS, ids=lambda m: m.__name__.rsplit(".", 1)[-1])
def backend(request):
    return request.param


def test_backend_selected():
    assert kernels.BACKEND in ("cython", "python")


ints = st.integers(-20, 20)


@given(st.integers(0, 6).flatmap(
    lambda n: st.lists(st.lists(ints, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_det_int_vs_cofactor(rows):
    for b in BACKENDS:
        assert b.det_int(rows) == cofactor_det(rows)


def test_det_int_big(backend):
    rows = [[10 ** 30 + i * j for j in range(4)] for i in range(4)]
    rows[0][0] += 1
    assert backend.det_int(rows) == cofactor_det(rows)


def _slow_first(rows, r):
    nr, nc = len(rows), len(rows[0])
    for k in range(1, min(r, nr, nc) + 1):
        for rs in combinations(range(nr), k):
            for cs in combinations(range(nc), k):
                v = cofactor_det([[rows[i][j] for j in cs] for i in rs])
                if v < 0:
                    return rs, cs, v
    return None


def test_first_negative_minor_random(backend):
    rng = random.Random(7)
    for _ in range(60):
        nr, nc = rng.randint(1, 5), rng.randint(1, 5)
        rows = [[rng.randint(-2, 6) for _ in range(nc)] for _ in range(nr)]
        r = rng.randint(1, 4)
        got = backend.first_negative_minor(rows, r)
        want = _slow_first(rows, r)
        if want is None:
            assert got is None
        else:
            assert (tuple(got[0]), tuple(got[1]), got[2]) == want


def test_count_minors(backend):
    assert backend.count_minors(3, 3, 3) == 9 + 9 + 1
    assert backend.count_minors(2, 5, 4) == 10 + 10


def test_pure_python_switch():
    import os
    import subprocess
    import sys
    code = ("from rtp import kernels; from rtp.catalog import eulerian_triangle; "
            "from rtp.positivity import is_tp_r; "
            "print(kernels.BACKEND, is_tp_r(eulerian_triangle(7).entries, 3).verdict)")
    env = dict(os.environ, RTP_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert out.stdout.split() == ["python", "pass"]

"""Backend selection for the integer minor kernels.

The compiled extension is used when it imports; setting ``RTP_PURE_PYTHON=1``
forces the pure-Python fallback.
"""
import os

BACKEND = "python"

if not os.environ.get("RTP_PURE_PYTHON"):
    try:
        from rtp._ckernels import count_minors, det_int, first_negative_minor
        BACKEND = "cython"
    except ImportError:  # extension not built
        pass

if BACKEND == "python":
    from rtp._pykernels import count_minors, det_int, first_negative_minor

__all__ = ["BACKEND", "det_int", "first_negative_minor", "count_minors"]

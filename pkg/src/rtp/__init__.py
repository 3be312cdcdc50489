"""Exact total-positivity toolkit for exponential Riordan arrays and
combinatorial triangles."""
from rtp.arith import Poly, format_rational, parse_rational
from rtp.kernels import BACKEND
from rtp.positivity import Certificate, RingMatrix
from rtp.riordan import ExpRiordan
from rtp.series import Series

__version__ = "0.1.0"

__all__ = ["BACKEND", "Certificate", "ExpRiordan", "Poly", "RingMatrix", "Series",
           "format_rational", "parse_rational", "__version__"]

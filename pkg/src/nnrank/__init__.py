"""Exact tools for nonnegative rank over Q and Q(sqrt 2).

Builds the matrices B, C, V and the 21x21 matrix A, verifies rank-one
factorization certificates exactly, brackets nonnegative ranks with exact
lower bounds, and probes upper bounds numerically with NMF.
"""
from .bounds import BoundReport, maximal_rectangles, nnr_bracket, rectangle_cover_number, support
from .certificates import Certificate, RankOneFactor, cert_A, cert_B, cert_M1, verify
from .constructions import M1, M2, M3, M4, alpha, build_A, build_B, build_C, build_V, sqrt2
from .field import QUADRATIC2, RATIONALS, FieldDescriptor, QuadraticNumber, parse_scalar, quad_sign
from .matrix import ExactMatrix, det, embed, outer, rank, submatrix

__all__ = [
    "BoundReport", "maximal_rectangles", "nnr_bracket", "rectangle_cover_number", "support",
    "Certificate", "RankOneFactor", "cert_A", "cert_B", "cert_M1", "verify",
    "M1", "M2", "M3", "M4", "alpha", "build_A", "build_B", "build_C", "build_V", "sqrt2",
    "QUADRATIC2", "RATIONALS", "FieldDescriptor", "QuadraticNumber", "parse_scalar", "quad_sign",
    "ExactMatrix", "det", "embed", "outer", "rank", "submatrix",
]

__version__ = "0.1.0"

"""Exact computation of uniformly F-compatible ideals of F-pure local rings
F_p[x_1..x_d]_(x) / A."""

from fcompat.groebner import Ideal, colon, contains, intersect, normal_form
from fcompat.kernels import BACKEND
from fcompat.poly import Polynomial, Ring, TermOrder

__all__ = [
    "BACKEND",
    "Ideal",
    "Polynomial",
    "Ring",
    "TermOrder",
    "colon",
    "contains",
    "intersect",
    "normal_form",
]

__version__ = "0.1.0"

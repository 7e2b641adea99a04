"""Exact rationals, small polynomials and cubic-field arithmetic."""

from fractions import Fraction as BigRational

from .field import (
    CubicField,
    FieldElement,
    discriminant,
    field_arith,
    floor_ratio,
    is_irreducible_cubic,
    minimal_polynomial,
    rational_roots,
    sign_of,
)
from .poly import PolyQ, format_poly, parse_poly, poly_gcd
from .roots import IsolatingInterval, isolate_real_roots, refine, roots_in_open_interval

__all__ = [
    "BigRational",
    "CubicField",
    "FieldElement",
    "IsolatingInterval",
    "PolyQ",
    "discriminant",
    "field_arith",
    "floor_ratio",
    "format_poly",
    "is_irreducible_cubic",
    "isolate_real_roots",
    "minimal_polynomial",
    "parse_poly",
    "poly_gcd",
    "rational_roots",
    "refine",
    "roots_in_open_interval",
    "sign_of",
]

"""Exact algebra: rationals, sparse polynomials, gcd and rational functions."""

from .gcd import divides, exact_divide, lcm_poly, poly_gcd, poly_gcd_many
from .parse import ParseError, parse_expr, parse_matrix, parse_poly, parse_tuple
from .poly import (
    MAX_VARS, ZERO_POLYNOMIAL, MultiPoly, format_poly, homogeneous_degree, substitute, variables,
)
from .ratfunc import QQ, Field, FieldElem, FunctionField, RatFunc, field_of, ratfunc_normalize

__all__ = [
    "MAX_VARS", "ZERO_POLYNOMIAL", "MultiPoly", "format_poly", "homogeneous_degree", "substitute",
    "variables", "poly_gcd", "poly_gcd_many", "exact_divide", "divides", "lcm_poly", "RatFunc",
    "ratfunc_normalize", "QQ", "Field", "FieldElem", "FunctionField", "field_of", "ParseError",
    "parse_expr", "parse_poly", "parse_tuple", "parse_matrix",
]

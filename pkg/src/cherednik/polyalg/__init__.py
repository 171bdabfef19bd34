"""Polynomials, rational functions and exact linear algebra over cyclotomic fields."""
from .linalg import Echelon, kernel, rank, solve
from .ops import INFINITY, GradedSubspace, act, demoted_difference, graded_solve, ord_along, reynolds
from .parse import parse_poly, parse_scalar
from .poly import Poly, count_monomials, divide_linear, monomials, try_divide_linear
from .ratfun import RatFun

__all__ = [
    "Echelon", "GradedSubspace", "INFINITY", "Poly", "RatFun", "act", "count_monomials",
    "demoted_difference", "divide_linear", "graded_solve", "kernel", "monomials", "ord_along",
    "parse_poly", "parse_scalar", "rank", "reynolds", "solve", "try_divide_linear",
]

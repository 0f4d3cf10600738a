"""Exact rational polynomials, grevlex Groebner bases and subresultants."""

from .groebner import (
    DEFAULT_BUDGET,
    BudgetExhausted,
    buchberger_basis,
    leading_monomials,
    poly_reduce,
    spoly,
)
from .linalg import INCONSISTENT, bareiss_det, rank, solve_particular, solve_with_rank
from .poly import (
    MultiPoly,
    grevlex_cmp,
    grevlex_key,
    linear_form,
    monomials_of_degree,
    parse_poly,
    poly_product,
    to_fraction,
)
from .subresultant import SubresultantPair, remainder_by_minors, subresultant_pair, sylvester_block

__all__ = [
    "DEFAULT_BUDGET",
    "BudgetExhausted",
    "INCONSISTENT",
    "MultiPoly",
    "SubresultantPair",
    "bareiss_det",
    "buchberger_basis",
    "grevlex_cmp",
    "grevlex_key",
    "leading_monomials",
    "linear_form",
    "monomials_of_degree",
    "parse_poly",
    "poly_product",
    "poly_reduce",
    "rank",
    "solve_with_rank",
    "remainder_by_minors",
    "solve_particular",
    "spoly",
    "subresultant_pair",
    "sylvester_block",
    "to_fraction",
]

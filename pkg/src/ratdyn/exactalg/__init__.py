"""Exact arithmetic over Q: polynomials, rational functions, linear algebra."""

from .poly import (Exponent, Polynomial, coprime_factor_basis, divide_exact,
                   fraction_gcd, grlex_key, integer_primitive, poly_gcd,
                   poly_lcm, primitive_part, squarefree_part, try_divide)
from .ratfunc import RationalFunction, ratfunc_normalize, substitute
from .linalg import (in_span, jacobian_rank, nullspace, poly_matrix_rank,
                     rank, rref, rref_sparse)

__all__ = [
    "Exponent", "Polynomial", "RationalFunction",
    "coprime_factor_basis", "divide_exact", "fraction_gcd", "grlex_key",
    "integer_primitive", "in_span", "jacobian_rank", "nullspace",
    "poly_gcd", "poly_lcm", "poly_matrix_rank", "primitive_part",
    "rank", "ratfunc_normalize", "rref", "rref_sparse", "squarefree_part",
    "substitute", "try_divide",
]

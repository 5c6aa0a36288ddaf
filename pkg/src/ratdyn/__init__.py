"""Exact-arithmetic workbench for rational dynamical systems over Q.

The package iterates rational self-maps of affine space, searches for
invariant rational functions up to degree budgets, ranks their algebraic
independence, checks whether the diagonal square acquires new invariants,
and collects degree-growth evidence for group-translation structure.  All
computation is exact over the rationals.
"""

from .dynsys import (DegreeProfile, DynamicalSystem, compose, degree_sequence,
                     diagonal_power, iterate, product, pullback,
                     symmetrize_iterate_invariant, validate_dominant)
from .exactalg import (Polynomial, RationalFunction, jacobian_rank, poly_gcd,
                       ratfunc_normalize, substitute)
from .invsearch import (DEFAULT_BUDGET, InvariantReport, SearchBudget,
                        SquareGainReport, adim_lower_bound, independence_rank,
                        polynomial_invariant_basis, rational_invariant_search,
                        square_gain_check)
from .parsing import parse_expression, parse_map
from .systemfile import SystemFile, load_system, loads_system
from .translation import (ExponentMatrix, TranslationEvidence, classify_system,
                          monomial_invariant_lattice, monomial_system,
                          normalize_leading_sequence)
from .verify import verify_invariant, verify_invariant_report

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_BUDGET", "DegreeProfile", "DynamicalSystem", "ExponentMatrix",
    "InvariantReport", "Polynomial", "RationalFunction", "SearchBudget",
    "SquareGainReport", "SystemFile", "TranslationEvidence",
    "adim_lower_bound", "classify_system", "compose", "degree_sequence",
    "diagonal_power", "independence_rank", "iterate", "jacobian_rank",
    "load_system", "loads_system", "monomial_invariant_lattice",
    "monomial_system", "normalize_leading_sequence", "parse_expression",
    "parse_map", "poly_gcd", "polynomial_invariant_basis", "product",
    "pullback", "ratfunc_normalize", "rational_invariant_search",
    "square_gain_check", "substitute", "symmetrize_iterate_invariant",
    "validate_dominant", "verify_invariant", "verify_invariant_report",
]

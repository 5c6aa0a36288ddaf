"""Invariant search: bases, catalogs, pencils, ranks, square gain."""

import pytest

from ratdyn.dynsys import DynamicalSystem, iterate, pullback
from ratdyn.exactalg import Polynomial, RationalFunction, jacobian_rank
from ratdyn.invsearch import (DEFAULT_BUDGET, SearchBudget, adim_lower_bound,
                              independence_rank, polynomial_invariant_basis,
                              rational_invariant_search, square_gain_check)

from conftest import make_system, poly, rf


def test_budget_validation():
    with pytest.raises(Exception):
        SearchBudget(max_num_degree=-1)
    assert DEFAULT_BUDGET == SearchBudget(3, 3, 2, 3)


# -- polynomial stage -----------------------------------------------------------


def test_polynomial_basis_shift_pair():
    shift2 = make_system("x y", "x + 1", "y + 1")
    basis = polynomial_invariant_basis(shift2, 1)
    assert basis[0] == Polynomial.constant(("x", "y"), 1)
    assert len(basis) == 2
    assert basis[1] == poly("x - y", "x y")


def test_polynomial_basis_identity_all_monomials():
    ident = DynamicalSystem.identity(("x", "y"))
    basis = polynomial_invariant_basis(ident, 2)
    assert len(basis) == 6
    assert all(len(p.terms) == 1 for p in basis)


def test_polynomial_basis_scaling_only_constants():
    # f(2x, 2y) = f forces 2^j c = c on each graded piece, so only degree 0
    double = make_system("x y", "2*x", "2*y")
    basis = polynomial_invariant_basis(double, 2)
    assert basis == [Polynomial.constant(("x", "y"), 1)]


def test_polynomial_basis_swap_symmetric_functions():
    swap = make_system("x y", "y", "x")
    basis = polynomial_invariant_basis(swap, 2)
    assert poly("x + y", "x y") in basis
    assert poly("x*y", "x y") in basis
    assert poly("x^2 + y^2", "x y") in basis
    for p in basis:
        assert pullback(swap, RationalFunction(p)) == RationalFunction(p)


# -- rational search -------------------------------------------------------------


def test_scaling_finds_ratio():
    double = make_system("x y", "2*x", "2*y")
    found = rational_invariant_search(double, SearchBudget(1, 1, 2, 3))
    assert found == [rf("x/y", "x y")]


def test_shift_search_is_empty():
    shift = make_system("x", "x + 1")
    assert rational_invariant_search(shift, DEFAULT_BUDGET) == []


def test_shift_pair_polynomial_stage():
    shift2 = make_system("x y", "x + 1", "y + 1")
    found = rational_invariant_search(shift2, SearchBudget(1, 1, 2, 3))
    assert found == [rf("x - y", "x y")]


def test_parallel_catalog_matches_serial():
    shear = make_system("x y", "2*x + y", "2*y")
    serial = rational_invariant_search(shear, DEFAULT_BUDGET, jobs=1)
    parallel = rational_invariant_search(shear, DEFAULT_BUDGET, jobs=3)
    assert serial == parallel


def test_henon_search_is_empty():
    henon = make_system("x y", "y", "y^2 - x")
    assert rational_invariant_search(henon, SearchBudget(4, 4, 2, 3)) == []


def test_pencil_stage_finds_ratio_without_catalog():
    # depth 0 disables the denominator catalog, forcing the pencil fallback
    double = make_system("x y", "2*x", "2*y")
    found = rational_invariant_search(double, SearchBudget(1, 1, 0, 3))
    assert len(found) == 1
    assert found[0] in (rf("x/y", "x y"), rf("y/x", "x y"))


def test_mobius_order_two_invariant():
    # x -> 1/x has order 2; x + 1/x generates the fixed field
    inv = make_system("x", "1/x")
    found = rational_invariant_search(inv, SearchBudget(2, 2, 2, 3))
    assert found
    expected = rf("(x^2 + 1)/x", "x")
    assert any(jacobian_rank([f, expected]) == 1 for f in found)


def test_search_soundness_and_rank():
    report = adim_lower_bound(make_system("x y", "2*x", "2*y"), SearchBudget(1, 1, 2, 3))
    assert report.independence_rank == 1
    assert report.reduction_generators == (rf("x/y", "x y"),)
    assert report.verified
    for f in report.invariants:
        assert pullback(report.system, f) == f


def test_adim_shift_rank_zero():
    report = adim_lower_bound(make_system("x", "x + 1"))
    assert report.independence_rank == 0
    assert report.invariants == ()


def test_adim_identity_rank_two():
    report = adim_lower_bound(DynamicalSystem.identity(("x", "y")),
                              SearchBudget(1, 1, 1, 3))
    assert report.independence_rank == 2
    assert len(report.reduction_generators) == 2


def test_adim_swap_rank_two():
    report = adim_lower_bound(make_system("x y", "y", "x"),
                              SearchBudget(2, 2, 2, 3))
    assert report.independence_rank == 2


def test_budget_monotonicity():
    double = make_system("x y", "2*x", "2*y")
    small = adim_lower_bound(double, SearchBudget(1, 1, 1, 1))
    big = adim_lower_bound(double, SearchBudget(2, 2, 2, 3))
    assert big.independence_rank >= small.independence_rank
    swap = make_system("x y", "y", "x")
    assert (adim_lower_bound(swap, SearchBudget(2, 2, 1, 1)).independence_rank
            >= adim_lower_bound(swap, SearchBudget(1, 1, 1, 1)).independence_rank)


def test_independence_rank_examples():
    assert independence_rank([rf("x - y", "x y"), rf("(x - y)^3 + 1", "x y")]) == 1
    assert independence_rank([rf("x/y", "x y"), rf("x + y", "x y")]) == 2
    assert independence_rank([]) == 0


def test_iterate_consistency_on_finite_order_maps():
    # the fixed field of an iterate is algebraic over the fixed field of the
    # map, so the found ranks agree at a large enough budget
    budget = SearchBudget(2, 2, 2, 3)
    for sysm, m in [(make_system("x", "-x"), 2),
                    (make_system("x y", "y", "x"), 2),
                    (make_system("x", "1/x"), 2)]:
        r1 = adim_lower_bound(sysm, budget).independence_rank
        rm = adim_lower_bound(iterate(sysm, m), budget).independence_rank
        assert r1 == rm


def test_iterate_rank_reached_via_symmetrization():
    # invariants of the m-th iterate symmetrize into invariants of the map,
    # so symmetrized outputs alone already realize the full rank
    from ratdyn.dynsys import symmetrize_iterate_invariant
    swap = make_system("x y", "y", "x")
    budget = SearchBudget(1, 1, 1, 3)
    iterate_invariants = adim_lower_bound(iterate(swap, 2), budget).invariants
    symmetrized = []
    for f in iterate_invariants:
        symmetrized.extend(symmetrize_iterate_invariant(swap, f, 2))
    assert independence_rank(symmetrized) >= adim_lower_bound(
        swap, SearchBudget(2, 2, 2, 3)).independence_rank


# -- square gain -------------------------------------------------------------------


def test_square_gain_shift():
    report = square_gain_check(make_system("x", "x + 1"))
    assert report.base_rank == 0
    assert report.square_rank >= 1
    assert report.new_invariant_found
    # witness is x1 - x2 up to scaling and addition of constants
    w = report.witness
    assert w is not None
    target = rf("x1 - x2", "x1 x2")
    one = RationalFunction.constant(("x1", "x2"), 1)
    assert jacobian_rank([w, target]) == 1
    assert report.degree_profile is not None
    assert report.degree_profile.growth_class == "bounded"


def test_square_gain_scaling_on_line():
    report = square_gain_check(make_system("x", "2*x"), SearchBudget(1, 1, 2, 3))
    assert report.base_rank == 0
    assert report.new_invariant_found
    assert report.witness == rf("x1/x2", "x1 x2")


def test_square_gain_identity_line_no_gain():
    report = square_gain_check(DynamicalSystem.identity(("x",)),
                               SearchBudget(1, 1, 1, 3))
    assert report.base_rank == 1
    assert report.square_rank == 2
    assert report.pullback_rank == 2
    assert not report.new_invariant_found
    assert report.witness is None


def test_square_gain_henon_negative():
    report = square_gain_check(make_system("x y", "y", "y^2 - x"))
    assert report.base_rank == 0
    assert report.square_rank == 0
    assert not report.new_invariant_found

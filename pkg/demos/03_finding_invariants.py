"""Searching for invariant rational functions within a degree budget.

An invariant is a rational function equal to its own pullback along the map.
The search is staged: a linear solve for polynomial invariants, a linear
solve per candidate denominator from a catalog of iterated factors, and a
bilinear pencil stage as a fallback.  Every hit is verified exactly before
it is reported.
"""

from ratdyn import (SearchBudget, adim_lower_bound, parse_map, pullback,
                    rational_invariant_search)

double = parse_map(("x", "y"), ["2*x", "2*y"])
report = adim_lower_bound(double, SearchBudget(1, 1, 2, 3))
print("map:", double)
print("invariants found:", [str(f) for f in report.invariants])
print("independence rank (lower bound for the count")
print("of independent invariants):", report.independence_rank)
print("generators:", [str(f) for f in report.reduction_generators])
for f in report.invariants:
    assert pullback(double, f) == f
print("all reported invariants verified exactly\n")

swap = parse_map(("x", "y"), ["y", "x"])
report = adim_lower_bound(swap, SearchBudget(2, 2, 2, 3))
print("map:", swap)
print("invariants:", [str(f) for f in report.invariants])
print("rank:", report.independence_rank, "(the symmetric functions)\n")

henon = parse_map(("x", "y"), ["y", "y^2 - x"])
found = rational_invariant_search(henon, SearchBudget(4, 4, 2, 3))
print("map:", henon)
print("invariants up to degree 4:", [str(f) for f in found] or "none")
print("an empty result bounds nothing: it only says no invariant exists")
print("within this budget")

"""The second cartesian power as the canonical detector of hidden structure.

A map with no invariants at all can still gain one after pairing with an
independent copy of itself: the shift x -> x + 1 has none, yet the pair
(x1 + 1, x2 + 1) preserves x1 - x2.  If any cartesian power produces a new
invariant, the square already does, which is why the square is the one
partner worth checking.
"""

from ratdyn import DEFAULT_BUDGET, SearchBudget, parse_map, square_gain_check

for variables, exprs, budget in [
        (("x",), ["x + 1"], DEFAULT_BUDGET),
        (("x",), ["2*x"], SearchBudget(1, 1, 2, 3)),
        (("x", "y"), ["2*x + y", "2*y"], DEFAULT_BUDGET),
        (("x", "y"), ["y", "y^2 - x"], DEFAULT_BUDGET)]:
    sysm = parse_map(variables, exprs)
    report = square_gain_check(sysm, budget)
    print("map:", sysm)
    print("  rank of invariants:        ", report.base_rank)
    print("  rank on the square:        ", report.square_rank)
    print("  rank from pullbacks alone: ", report.pullback_rank)
    print("  new invariant found:       ", report.new_invariant_found)
    if report.witness is not None:
        print("  witness:                   ", report.witness)
    if report.degree_profile is not None:
        print("  degree evidence:           ", report.degree_profile.degrees,
              report.degree_profile.growth_class)
    print()

print("the quadratic plane map gains nothing: consistent with its")
print("exponential degree growth, which rules out translation structure")

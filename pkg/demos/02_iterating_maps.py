"""Iterating rational maps and reading the degree growth of the iterates.

Bounded degree sequences are the computable shadow of "all iterates live in
one algebraic family"; exponential growth is strong evidence against any
hidden group-translation structure.
"""

from ratdyn import degree_sequence, iterate, parse_map, validate_dominant

henon = parse_map(("x", "y"), ["y", "y^2 - x"])
print("map:", henon)
print("dominant?", validate_dominant(henon))

for m in range(4):
    print(f"iterate {m}:", iterate(henon, m))

profile = degree_sequence(henon, 6)
print("degrees of the first 6 iterates:", profile.degrees)
print("growth class:", profile.growth_class)
print("fitted log-degree slope:", profile.fitted_rate, "~ log 2")

print()
mobius = parse_map(("x",), ["(2*x + 3)/(x + 1)"])
print("map:", mobius)
print("iterate 4:", iterate(mobius, 4))
profile = degree_sequence(mobius, 8)
print("degrees:", profile.degrees, "->", profile.growth_class)
print("(gcd cancellation keeps fractional linear iterates at degree 1)")

print()
mono = parse_map(("x", "y"), ["x^2*y", "x*y"])
profile = degree_sequence(mono, 5)
print("map:", mono)
print("degrees:", profile.degrees, "->", profile.growth_class)
print("(same numbers as the max row sums of powers of [[2,1],[1,1]])")

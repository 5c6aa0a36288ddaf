"""Recognizing group translations and cross-checking with the lattice oracle.

Affine maps and products of one-variable fractional linear maps are group
translations outright.  Monomial maps are translations exactly when their
exponent matrix has finite multiplicative order.  Everything else is judged
by degree growth only, and the verdict says so honestly: candidate evidence,
never proof.
"""

from ratdyn import (ExponentMatrix, classify_system, monomial_invariant_lattice,
                    monomial_system, parse_map, polynomial_invariant_basis)

for variables, exprs in [
        (("x",), ["x + 1"]),
        (("x", "y"), ["(2*x + 3)/(x + 1)", "5*y"]),
        (("x", "y"), ["y", "1/x"]),
        (("x", "y"), ["x^2*y", "x*y"]),
        (("x", "y"), ["y", "y^2 - x"])]:
    sysm = parse_map(variables, exprs)
    ev = classify_system(sysm)
    print(f"{str(sysm):<42} {ev.recognized_class:<16} {ev.verdict}")

print()
print("lattice oracle vs linear search on a monomial map:")
A = ExponentMatrix(((0, 1), (1, 0)))
sysm = monomial_system(("x", "y"), A)
lattice = monomial_invariant_lattice(A, 4)
print("  fixed exponent vectors up to degree 4:", lattice)
basis = polynomial_invariant_basis(sysm, 4)
singles = sorted((next(iter(p.terms)) for p in basis if len(p.terms) == 1),
                 key=lambda e: (sum(e), e))
print("  single-monomial invariants from the solver:", singles)
assert singles == lattice
print("  the two computations agree exactly")

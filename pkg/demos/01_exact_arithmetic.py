"""Exact arithmetic tour: polynomials, gcd, and canonical rational functions.

Everything in this package computes over Q with no floating point anywhere,
so printed equalities below are exact identities, not approximations.
"""

from fractions import Fraction

from ratdyn import Polynomial, RationalFunction, parse_expression, poly_gcd

XY = ("x", "y")


def show(label, value):
    print(f"{label:<38} {value}")


# Polynomials are sparse maps from exponent tuples to rational coefficients.
p = parse_expression("x^2 - y^2", XY).num
q = parse_expression("x - y", XY).num
show("p =", p)
show("q =", q)

# The gcd is content-normalized: integer coefficients, positive leading term.
g = poly_gcd(p, q)
show("gcd(p, q) =", g)

# Rational functions live in a canonical reduced form, so value equality is
# representation equality: (x^2 - y^2)/(x - y) literally is x + y.
f = RationalFunction(p, q)
show("(x^2 - y^2)/(x - y) normalizes to", f)
assert f == parse_expression("x + y", XY)

# Sign and content normalize too: 2x / -2 becomes -x.
h = RationalFunction(parse_expression("2*x", XY).num,
                     Polynomial.constant(XY, -2))
show("(2x)/(-2) normalizes to", h)

# Exact evaluation anywhere off the pole set.
point = (Fraction(22, 7), Fraction(-3, 5))
show("f at (22/7, -3/5) =", f.evaluate(point))

# Arithmetic is closed and exact; denominators recombine and cancel.
w = f / parse_expression("x + y", XY) - 1
show("f/(x + y) - 1 =", w)
assert w.is_zero
print("\nall identities above are exact")

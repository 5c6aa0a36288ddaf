"""Block normalization of polynomial sequences over a function field.

Given Q-linearly independent univariate polynomials with coefficients in
Q(s), the procedure rewrites them, preserving the Q-span, so that within
each block of equal degree the leading coefficients are Q-linearly
independent.  The change of basis is recorded in both directions.
"""

from ratdyn import normalize_leading_sequence, parse_expression
from ratdyn.translation import UnivariatePolynomial, leading_blocks_independent

S = ("s",)


def U(*coeff_srcs):
    return UnivariatePolynomial([parse_expression(c, S) for c in coeff_srcs])


inputs = [U("0", "1", "s"),      # s t^2 + t
          U("0", "0", "s"),      # s t^2
          U("2", "1")]           # t + 2
print("inputs:")
for p in inputs:
    print("  ", p)

result = normalize_leading_sequence(inputs)
print("normalized (same Q-span, independent leading blocks):")
for p in result.polys:
    print("  ", p)
assert leading_blocks_independent(result.polys)

print("forward transition matrix (outputs in terms of inputs):")
for row in result.forward:
    print("  ", [str(c) for c in row])
print("backward transition matrix (inputs in terms of outputs):")
for row in result.backward:
    print("  ", [str(c) for c in row])

k = len(inputs)
for i in range(k):
    for j in range(k):
        acc = sum(result.forward[i][m] * result.backward[m][j] for m in range(k))
        assert acc == (1 if i == j else 0)
print("product of the transition matrices is the identity: span preserved")

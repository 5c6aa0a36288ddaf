"""Translation evidence: recognizers, lattice oracle, block normalization."""

import random
from fractions import Fraction

import pytest

from ratdyn.errors import PreconditionError, SingularMatrixError
from ratdyn.invsearch import polynomial_invariant_basis
from ratdyn.translation import (CLASS_AFFINE, CLASS_MOBIUS_PRODUCT,
                                CLASS_MONOMIAL, CLASS_UNRECOGNIZED,
                                ExponentMatrix, UnivariatePolynomial,
                                VERDICT_NEGATIVE, VERDICT_PROVEN,
                                classify_system, leading_blocks_independent,
                                monomial_invariant_lattice, monomial_system,
                                normalize_leading_sequence,
                                system_exponent_matrix)

from conftest import make_system, rf


# -- classification -------------------------------------------------------------


def test_classify_shift_affine_proven():
    ev = classify_system(make_system("x", "x + 1"))
    assert ev.recognized_class == CLASS_AFFINE
    assert ev.verdict == VERDICT_PROVEN
    assert ev.profile.growth_class == "bounded"


def test_classify_mobius_product_proven():
    ev = classify_system(make_system("x y", "(2*x + 3)/(x + 1)", "5*y"))
    assert ev.recognized_class == CLASS_MOBIUS_PRODUCT
    assert ev.verdict == VERDICT_PROVEN


def test_classify_henon_negative():
    ev = classify_system(make_system("x y", "y", "y^2 - x"))
    assert ev.recognized_class == CLASS_UNRECOGNIZED
    assert ev.verdict == VERDICT_NEGATIVE


def test_classify_monomial_finite_order_proven():
    # (x, y) -> (y, 1/x) has exponent matrix [[0,1],[-1,0]] of order 4
    ev = classify_system(make_system("x y", "y", "1/x"))
    assert ev.recognized_class == CLASS_MONOMIAL
    assert ev.verdict == VERDICT_PROVEN
    # the swap itself is affine-linear, so the affine recognizer wins
    assert classify_system(make_system("x y", "y", "x")).recognized_class == CLASS_AFFINE


def test_classify_monomial_infinite_order_candidate_or_negative():
    ev = classify_system(make_system("x y", "x^2*y", "x*y"))
    assert ev.recognized_class == CLASS_MONOMIAL
    assert ev.verdict == VERDICT_NEGATIVE  # (3,8,21,55,...) grows exponentially


def test_exponent_matrix_roundtrip_and_negative_entries():
    A = ExponentMatrix(((0, 1), (1, 0)))
    sysm = monomial_system(("x", "y"), A)
    assert system_exponent_matrix(sysm) == A
    B = ExponentMatrix(((1, -2), (0, 1)))
    sysb = monomial_system(("x", "y"), B)
    assert sysb.coords[0] == rf("x/y^2", "x y")
    assert system_exponent_matrix(sysb) == B


def test_finite_order_detection():
    assert ExponentMatrix(((0, 1), (1, 0))).has_finite_order()
    assert ExponentMatrix(((0, -1), (1, 0))).has_finite_order()      # order 4
    assert ExponentMatrix(((0, -1), (1, -1))).has_finite_order()     # order 3
    assert not ExponentMatrix(((2, 1), (1, 1))).has_finite_order()
    assert not ExponentMatrix(((1, 1), (0, 1))).has_finite_order()   # unipotent


# -- lattice oracle ---------------------------------------------------------------


def test_lattice_identity_counts():
    A = ExponentMatrix(((1, 0), (0, 1)))
    pts = monomial_invariant_lattice(A, 2)
    assert len(pts) == 6  # all monomials of degree <= 2 are fixed


def test_lattice_expanding_map_only_origin():
    # (A^T - I) u = 0 has only u = 0 because det(A^T - I) = -1
    A = ExponentMatrix(((2, 1), (1, 1)))
    assert monomial_invariant_lattice(A, 6) == [(0, 0)]


def test_lattice_swap():
    A = ExponentMatrix(((0, 1), (1, 0)))
    assert monomial_invariant_lattice(A, 2) == [(0, 0), (1, 1)]


def test_lattice_rejects_singular():
    with pytest.raises(SingularMatrixError):
        monomial_invariant_lattice(ExponentMatrix(((1, 1), (1, 1))), 3)


def test_lattice_agrees_with_linear_search():
    # 20 seeded random non-negative matrices, n in {2, 3}, det != 0
    rng = random.Random(20260808)
    produced = 0
    while produced < 20:
        n = rng.choice([2, 3])
        rows = tuple(tuple(rng.randint(0, 2) for _ in range(n)) for _ in range(n))
        A = ExponentMatrix(rows)
        if A.det() == 0:
            continue
        produced += 1
        variables = tuple("xyz"[:n])
        sysm = monomial_system(variables, A)
        basis = polynomial_invariant_basis(sysm, 6)
        monomials = sorted(
            (next(iter(p.terms)) for p in basis if len(p.terms) == 1),
            key=lambda e: (sum(e), e))
        assert monomials == monomial_invariant_lattice(A, 6)


# -- block normalization -----------------------------------------------------------


S = ("s",)


def C(src):
    return rf(src, S)


def U(*coeff_srcs):
    return UnivariatePolynomial([C(src) for src in coeff_srcs])


def test_normalize_shift_pair():
    # (t, t + 1): the degree-1 leading coefficients are (1, 1); one descent
    # step replaces the larger index by the constant difference
    result = normalize_leading_sequence([U("0", "1"), U("1", "1")])
    assert result.polys == (U("0", "1"), U("1"))
    assert leading_blocks_independent(result.polys)


def test_normalize_one_descent_step():
    # (s t^2 + t, s t^2): blocks after one step have degrees 2 and 1
    result = normalize_leading_sequence([U("0", "1", "s"), U("0", "0", "s")])
    assert sorted(p.degree for p in result.polys) == [1, 2]
    assert leading_blocks_independent(result.polys)


def test_normalize_keeps_already_valid():
    inputs = [U("0", "0", "1"), U("0", "1")]
    result = normalize_leading_sequence(inputs)
    assert result.polys == tuple(inputs)


def test_normalize_rejects_dependent_input():
    with pytest.raises(PreconditionError):
        normalize_leading_sequence([U("0", "s"), U("0", "2*s")])


def test_normalize_with_probe_points():
    # probe points short-circuit independent blocks; the result is the same
    from fractions import Fraction
    probe = [(Fraction(3),), (Fraction(-7),), (Fraction(11),)]
    inputs = [U("0", "1", "s"), U("0", "0", "s"), U("1", "s")]
    with_probe = normalize_leading_sequence(inputs, probe_points=probe)
    without = normalize_leading_sequence(inputs)
    assert with_probe.polys == without.polys
    assert with_probe.forward == without.forward


def test_normalize_transition_matrices():
    inputs = [U("0", "1", "s"), U("0", "0", "s"), U("1", "s")]
    result = normalize_leading_sequence(inputs)
    s = len(inputs)
    # matrices multiply to the identity
    for i in range(s):
        for j in range(s):
            acc = sum(result.forward[i][k] * result.backward[k][j] for k in range(s))
            assert acc == (1 if i == j else 0)
    # outputs really are the recorded combinations of the inputs
    for i in range(s):
        acc = None
        for k in range(s):
            c = result.forward[i][k]
            if c:
                term = inputs[k].scale(c)
                acc = term if acc is None else acc.combine(Fraction(1), term)
        assert acc == result.polys[i]


def test_normalize_random_suite():
    rng = random.Random(99)
    aux = ("s1", "s2")

    def random_rf():
        num = rng.choice(["1", "s1", "s2", "s1 + 1", "s1*s2", "2", "s2 - 1", "0"])
        den = rng.choice(["1", "1", "1", "s1", "s2 + 1"])
        return rf(f"({num})/({den})", aux)

    done = 0
    while done < 25:
        s = rng.randint(1, 5)
        polys = []
        for _ in range(s):
            degree = rng.randint(0, 4)
            coeffs = [random_rf() for _ in range(degree + 1)]
            if all(c.is_zero for c in coeffs):
                coeffs[-1] = rf("1", aux)
            polys.append(UnivariatePolynomial(coeffs))
        try:
            result = normalize_leading_sequence(polys)
        except PreconditionError:
            continue  # random draw was Q-linearly dependent; try another
        done += 1
        assert leading_blocks_independent(result.polys)
        k = len(polys)
        for i in range(k):
            for j in range(k):
                acc = sum(result.forward[i][m] * result.backward[m][j] for m in range(k))
                assert acc == (1 if i == j else 0)

"""Evidence for group-translation structure of a rational self-map.

Three independent sources of evidence are produced:

  * closed-form recognizers (affine maps, products of one-variable Moebius
    maps, monomial maps) that certify translation structure outright;
  * the degree profile of the iterates -- bounded degrees are necessary for
    the iterates to live in one algebraic family, so bounded growth upgrades
    an unrecognized map to a candidate, and exponential growth is negative
    evidence;
  * a lattice oracle for monomial maps, used to cross-check the linear
    invariant search by brute-force enumeration.

The block normalization ``normalize_leading_sequence`` rewrites a Q-linearly
independent list of univariate polynomials (coefficients in a rational
function field) into one with the same Q-span whose equal-degree blocks have
Q-linearly independent leading coefficients.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .dynsys import (DegreeProfile, DynamicalSystem, GROWTH_EXPONENTIAL,
                     degree_sequence, require_dominant)
from .errors import PreconditionError, SingularMatrixError
from .exactalg import (Polynomial, RationalFunction, grlex_key,
                       nullspace, poly_lcm, divide_exact, rref)

CLASS_AFFINE = "affine"
CLASS_MOBIUS_PRODUCT = "mobius-product"
CLASS_MONOMIAL = "monomial"
CLASS_UNRECOGNIZED = "unrecognized"

VERDICT_PROVEN = "translational-proven"
VERDICT_CANDIDATE = "translational-candidate"
VERDICT_NEGATIVE = "not-translational-evidence"

_DEFAULT_WINDOW = 6


@dataclass(frozen=True)
class TranslationEvidence:
    profile: DegreeProfile
    recognized_class: str
    verdict: str


@dataclass(frozen=True)
class ExponentMatrix:
    """Integer exponent matrix of a monomial map x_i -> prod_j x_j^{A_ij}."""

    entries: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(v) for v in row) for row in self.entries)
        object.__setattr__(self, "entries", rows)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise PreconditionError("exponent matrix must be square")

    @property
    def size(self) -> int:
        return len(self.entries)

    def det(self) -> int:
        n = self.size
        m = [[Fraction(v) for v in row] for row in self.entries]
        det = Fraction(1)
        for c in range(n):
            pivot = next((r for r in range(c, n) if m[r][c]), None)
            if pivot is None:
                return 0
            if pivot != c:
                m[c], m[pivot] = m[pivot], m[c]
                det = -det
            det *= m[c][c]
            inv = 1 / m[c][c]
            for r in range(c + 1, n):
                if m[r][c]:
                    f = m[r][c] * inv
                    m[r] = [a - f * b for a, b in zip(m[r], m[c])]
        assert det.denominator == 1
        return int(det)

    def times(self, other: "ExponentMatrix") -> "ExponentMatrix":
        n = self.size
        a, b = self.entries, other.entries
        return ExponentMatrix(tuple(
            tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n))
            for i in range(n)))

    def is_identity(self) -> bool:
        return all(v == (1 if i == j else 0)
                   for i, row in enumerate(self.entries)
                   for j, v in enumerate(row))

    def has_finite_order(self) -> bool:
        """Exact test: A has finite multiplicative order iff A^M = I where M
        is the lcm of all m with euler_phi(m) <= n (the minimal polynomial of
        a finite-order integer matrix is a product of such cyclotomics)."""
        n = self.size
        if self.det() == 0:
            return False
        admissible = [m for m in range(1, 4 * n * n + 5)
                      if _euler_phi(m) <= n]
        M = 1
        for m in admissible:
            M = M * m // math.gcd(M, m)
        power = self
        result = None
        k = M
        while k:
            if k & 1:
                result = power if result is None else result.times(power)
            k >>= 1
            if k:
                power = power.times(power)
        return result.is_identity()


def _euler_phi(m: int) -> int:
    out = m
    p = 2
    mm = m
    while p * p <= mm:
        if mm % p == 0:
            while mm % p == 0:
                mm //= p
            out -= out // p
        p += 1
    if mm > 1:
        out -= out // mm
    return out


# -- recognizers ------------------------------------------------------------------


def _single_term(p: Polynomial):
    if len(p.terms) != 1:
        return None
    return next(iter(p.terms.items()))


def _is_affine(sys: DynamicalSystem) -> bool:
    return all(c.den.is_constant and c.num.total_degree <= 1 for c in sys.coords)


def _is_mobius_product(sys: DynamicalSystem) -> bool:
    for i, c in enumerate(sys.coords):
        own = [0] * sys.dim
        for e in list(c.num.terms) + list(c.den.terms):
            for j, k in enumerate(e):
                if k and j != i:
                    return False
                own[j] = max(own[j], k)
        if c.num.degree_in(i) > 1 or c.den.degree_in(i) > 1:
            return False
        a = c.num.coefficient(tuple(1 if j == i else 0 for j in range(sys.dim)))
        b = c.num.coefficient((0,) * sys.dim)
        cc = c.den.coefficient(tuple(1 if j == i else 0 for j in range(sys.dim)))
        d = c.den.coefficient((0,) * sys.dim)
        if a * d - b * cc == 0:
            return False
    return True


def system_exponent_matrix(sys: DynamicalSystem) -> Optional[ExponentMatrix]:
    """Exponent matrix when every coordinate is a single monomial with
    coefficient 1 (negative exponents come from the denominator)."""
    rows = []
    for c in sys.coords:
        top = _single_term(c.num)
        bot = _single_term(c.den)
        if top is None or bot is None:
            return None
        (en, cn), (ed, cd) = top, bot
        if cn != 1 or cd != 1:
            return None
        rows.append(tuple(a - b for a, b in zip(en, ed)))
    return ExponentMatrix(tuple(rows))


def monomial_system(variables: Sequence[str], A: ExponentMatrix) -> DynamicalSystem:
    """The monomial map with the given exponent matrix."""
    vars_t = tuple(variables)
    n = len(vars_t)
    if A.size != n:
        raise PreconditionError("matrix size does not match variable count")
    coords = []
    for row in A.entries:
        num = {i: k for i, k in enumerate(row) if k > 0}
        den = {i: -k for i, k in enumerate(row) if k < 0}
        pnum = Polynomial(vars_t, {tuple(num.get(i, 0) for i in range(n)): Fraction(1)})
        pden = Polynomial(vars_t, {tuple(den.get(i, 0) for i in range(n)): Fraction(1)})
        coords.append(RationalFunction(pnum, pden))
    return DynamicalSystem(vars_t, tuple(coords))


def classify_system(sys: DynamicalSystem, window: int = _DEFAULT_WINDOW) -> TranslationEvidence:
    """Pattern-match the coordinates and combine with degree growth.

    Affine maps and products of one-variable Moebius maps are group
    translations outright; a monomial map is one exactly when its exponent
    matrix has finite multiplicative order.  Everything else is judged by
    the degree profile only: bounded growth yields a candidate verdict,
    exponential growth negative evidence.
    """
    require_dominant(sys)
    profile = degree_sequence(sys, window)
    if _is_affine(sys):
        cls = CLASS_AFFINE
    elif _is_mobius_product(sys):
        cls = CLASS_MOBIUS_PRODUCT
    elif system_exponent_matrix(sys) is not None:
        cls = CLASS_MONOMIAL
    else:
        cls = CLASS_UNRECOGNIZED
    if cls in (CLASS_AFFINE, CLASS_MOBIUS_PRODUCT):
        verdict = VERDICT_PROVEN
    elif cls == CLASS_MONOMIAL and system_exponent_matrix(sys).has_finite_order():
        verdict = VERDICT_PROVEN
    elif profile.growth_class == GROWTH_EXPONENTIAL:
        verdict = VERDICT_NEGATIVE
    else:
        verdict = VERDICT_CANDIDATE
    return TranslationEvidence(profile=profile, recognized_class=cls, verdict=verdict)


# -- monomial lattice oracle ---------------------------------------------------------


def monomial_invariant_lattice(A: ExponentMatrix, d: int) -> List[Tuple[int, ...]]:
    """All exponent vectors u >= 0 with |u| <= d and (A transpose) u = u.

    Exhaustive enumeration of the simplex; this is the brute-force oracle for
    the invariant monomials of the monomial map with matrix A.
    """
    if d < 0:
        raise PreconditionError("degree bound must be >= 0")
    if A.det() == 0:
        raise SingularMatrixError("exponent matrix must be nonsingular")
    n = A.size
    out = []

    def rec(prefix, remaining):
        if len(prefix) == n:
            u = tuple(prefix)
            for i in range(n):
                if sum(A.entries[j][i] * u[j] for j in range(n)) != u[i]:
                    return
            out.append(u)
            return
        for k in range(remaining + 1):
            rec(prefix + [k], remaining - k)

    rec([], d)
    out.sort(key=grlex_key)
    return out


# -- block normalization of polynomial sequences ----------------------------------------


class UnivariatePolynomial:
    """Polynomial in one distinguished variable with rational-function
    coefficients (the coefficient field is Q(s_1, ..., s_r), represented by
    RationalFunction values over shared auxiliary variables)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[RationalFunction]):
        cs = list(coeffs)
        if not cs:
            raise PreconditionError("need at least the constant coefficient")
        while len(cs) > 1 and cs[-1].is_zero:
            cs.pop()
        base = cs[0].variables
        for c in cs:
            if c.variables != base:
                raise PreconditionError("coefficients over different variables")
        self.coeffs = tuple(cs)

    @classmethod
    def from_scalars(cls, variables, scalars) -> "UnivariatePolynomial":
        return cls([RationalFunction.constant(variables, s) for s in scalars])

    @property
    def is_zero(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0].is_zero

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def leading(self) -> RationalFunction:
        return self.coeffs[-1]

    def combine(self, scalar, other: "UnivariatePolynomial") -> "UnivariatePolynomial":
        """self + scalar * other."""
        width = max(len(self.coeffs), len(other.coeffs))
        variables = self.coeffs[0].variables
        zero = RationalFunction.constant(variables, 0)
        out = []
        for i in range(width):
            a = self.coeffs[i] if i < len(self.coeffs) else zero
            b = other.coeffs[i] if i < len(other.coeffs) else zero
            out.append(a + b * scalar)
        return UnivariatePolynomial(out)

    def scale(self, scalar) -> "UnivariatePolynomial":
        return UnivariatePolynomial([c * scalar for c in self.coeffs])

    def __eq__(self, other):
        if not isinstance(other, UnivariatePolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __str__(self):
        parts = []
        for i, c in enumerate(reversed(self.coeffs)):
            d = len(self.coeffs) - 1 - i
            if c.is_zero:
                continue
            body = f"({c})"
            parts.append(body if d == 0 else f"{body}*t^{d}" if d > 1 else f"{body}*t")
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"UnivariatePolynomial({self})"


@dataclass(frozen=True)
class NormalizedSequence:
    """Output of the block normalization plus the recorded change of basis:
    polys = forward . inputs and inputs = backward . polys over Q."""

    polys: Tuple[UnivariatePolynomial, ...]
    forward: Tuple[Tuple[Fraction, ...], ...]
    backward: Tuple[Tuple[Fraction, ...], ...]


def _coefficient_vectors(values: Sequence[RationalFunction]):
    """Clear denominators jointly and lay out coefficient vectors over Q."""
    den = values[0].den
    for v in values[1:]:
        den = poly_lcm(den, v.den)
    index: Dict[Tuple[int, ...], int] = {}
    rows = []
    for v in values:
        p = v.num * divide_exact(den, v.den)
        entries = {}
        for e, c in p.terms.items():
            entries[index.setdefault(e, len(index))] = c
        rows.append(entries)
    width = len(index)
    dense = []
    for entries in rows:
        row = [Fraction(0)] * max(width, 1)
        for i, c in entries.items():
            row[i] = c
        dense.append(row)
    return dense


def _dependence(values: Sequence[RationalFunction],
                probe_points=None) -> Optional[List[Fraction]]:
    """A Q-linear dependence among field elements, or None if independent.

    The optional probe points give a randomized independence fast path
    (evaluation can only underestimate rank); dependence itself is always
    certified by the exact nullspace after clearing denominators.  The
    returned vector is the canonical one whose last nonzero entry sits at
    the largest possible index and equals 1.
    """
    if probe_points:
        rows = []
        for v in values:
            row = []
            usable = True
            for pt in probe_points:
                try:
                    row.append(v.evaluate(pt))
                except ZeroDivisionError:
                    usable = False
                    break
            if not usable:
                rows = None
                break
            rows.append(row)
        if rows is not None:
            _, pivots = rref(rows)
            if len(pivots) == len(values):
                return None
    dense = _coefficient_vectors(values)
    sparse = []
    width = len(dense[0])
    for c in range(width):
        row = {i: dense[i][c] for i in range(len(dense)) if dense[i][c]}
        if row:
            sparse.append(row)
    kernel = nullspace(sparse, len(values))
    if not kernel:
        return None
    best = max(kernel, key=lambda v: max(i for i, x in enumerate(v) if x))
    last = max(i for i, x in enumerate(best) if x)
    return [x / best[last] for x in best]


def normalize_leading_sequence(qs: Sequence[UnivariatePolynomial],
                               probe_points=None) -> NormalizedSequence:
    """Rewrite to the same Q-span with independent leading blocks.

    Whenever the leading coefficients of an equal-degree block admit a
    Q-linear dependence, the dependent member of largest index is replaced by
    the corresponding lower-degree combination; the descent terminates
    because each step shrinks a block without touching higher degrees.
    Transition matrices in both directions are recorded and returned.
    """
    ps = list(qs)
    s = len(ps)
    if s == 0:
        raise PreconditionError("empty input sequence")
    for p in ps:
        if p.is_zero:
            raise PreconditionError("input sequence is Q-linearly dependent (zero entry)")
    forward = [[Fraction(1 if i == j else 0) for j in range(s)] for i in range(s)]
    backward = [[Fraction(1 if i == j else 0) for j in range(s)] for i in range(s)]

    while True:
        blocks: Dict[int, List[int]] = {}
        for i, p in enumerate(ps):
            blocks.setdefault(p.degree, []).append(i)
        target = None
        for deg in sorted(blocks, reverse=True):
            idxs = blocks[deg]
            if len(idxs) == 1:
                continue
            dep = _dependence([ps[i].leading() for i in idxs], probe_points)
            if dep is not None:
                target = (idxs, dep)
                break
        if target is None:
            break
        idxs, dep = target
        support = [k for k, c in enumerate(dep) if c]
        j_local = support[-1]
        j = idxs[j_local]
        replacement = None
        for k_local in support:
            i = idxs[k_local]
            term = ps[i].scale(dep[k_local])
            replacement = term if replacement is None else replacement.combine(
                Fraction(1), term)
        if replacement.is_zero:
            raise PreconditionError("input sequence is Q-linearly dependent")
        assert dep[j_local] == 1
        # row operation p_j <- sum_k dep_k p_{idxs_k}
        new_row = [Fraction(0)] * s
        for k_local, c in enumerate(dep):
            if c:
                for col in range(s):
                    new_row[col] += c * forward[idxs[k_local]][col]
        forward[j] = new_row
        # on the inverse, column j stays and the other involved columns lose
        # its contribution: B <- B E^{-1} with E the unit row modification
        for k_local in support[:-1]:
            i = idxs[k_local]
            c = dep[k_local]
            for r in range(s):
                backward[r][i] -= backward[r][j] * c
        ps[j] = replacement
    # final consistency: the recorded matrices must be mutually inverse
    for i in range(s):
        for j in range(s):
            acc = sum(forward[i][k] * backward[k][j] for k in range(s))
            assert acc == (1 if i == j else 0), "transition bookkeeping broke"
    return NormalizedSequence(polys=tuple(ps),
                              forward=tuple(tuple(r) for r in forward),
                              backward=tuple(tuple(r) for r in backward))


def leading_blocks_independent(polys: Sequence[UnivariatePolynomial]) -> bool:
    """Check the normalized property: per degree block, full leading rank."""
    blocks: Dict[int, List[RationalFunction]] = {}
    for p in polys:
        blocks.setdefault(p.degree, []).append(p.leading())
    for leads in blocks.values():
        dense = _coefficient_vectors(leads)
        _, pivots = rref(dense)
        if len(pivots) != len(leads):
            return False
    return True

"""Bounded-degree search for invariant rational functions.

The fixed field of the pullback is approached in three stages, each exact:

  * polynomial stage -- invariance of a polynomial of bounded degree is a
    linear condition on its coefficients; solve the nullspace over Q;
  * fixed-denominator stage -- for each denominator from a catalog of
    factors of the map's iterated numerators and denominators, invariance of
    p/q is linear in p;
  * pencil stage -- the full bilinear condition on p/q is linearized on the
    antisymmetrized coefficient pairs p_i q_j - p_j q_i; decomposable points
    of that nullspace are exactly the invariant pencils, and are extracted
    when the nullspace is small enough to solve the quadratic conditions.

Every emitted function is verified against the exact identity "pullback
equals the function itself"; budget exhaustion only limits completeness,
which is never claimed.
"""

from __future__ import annotations

import itertools
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .dynsys import (DegreeProfile, DynamicalSystem, compose, degree_sequence,
                     diagonal_power, pullback, require_dominant)
from .errors import PreconditionError
from .exactalg import (Polynomial, RationalFunction, coprime_factor_basis,
                       grlex_key, in_span, jacobian_rank, nullspace, poly_lcm,
                       divide_exact, rref_sparse, try_divide)

_CATALOG_CAP = 2000          # deterministic cap on denominator candidates
_EVIDENCE_WINDOW = 6         # degree window attached to positive square gains


@dataclass(frozen=True)
class SearchBudget:
    """Truncation of the invariant search; all fields are >= 0."""

    max_num_degree: int = 3
    max_den_degree: int = 3
    denominator_catalog_depth: int = 2
    nullspace_rank1_limit: int = 3

    def __post_init__(self):
        for name in ("max_num_degree", "max_den_degree",
                     "denominator_catalog_depth", "nullspace_rank1_limit"):
            if getattr(self, name) < 0:
                raise PreconditionError(f"{name} must be >= 0")


DEFAULT_BUDGET = SearchBudget()


@dataclass(frozen=True)
class InvariantReport:
    system: DynamicalSystem
    budget: SearchBudget
    invariants: Tuple[RationalFunction, ...]
    independence_rank: int
    verified: bool
    reduction_generators: Tuple[RationalFunction, ...]


@dataclass(frozen=True)
class SquareGainReport:
    """Invariant gain of the diagonal square over single-factor pullbacks."""

    base_rank: int
    square_rank: int
    pullback_rank: int
    new_invariant_found: bool
    witness: Optional[RationalFunction]
    degree_profile: Optional[DegreeProfile]


# -- shared machinery -----------------------------------------------------------


def _monomials_upto(n: int, d: int) -> List[Tuple[int, ...]]:
    """Exponent tuples of total degree <= d, ascending graded lex."""
    out = []

    def rec(prefix, remaining, slots):
        if slots == 0:
            out.append(tuple(prefix))
            return
        for k in range(remaining + 1):
            rec(prefix + [k], remaining - k, slots - 1)

    rec([], d, n)
    out.sort(key=grlex_key)
    return out


def _composed_monomials(sys: DynamicalSystem, monos, clearing: int):
    """Numerators of the pullbacks of the given monomials.

    With per-variable padding to the uniform exponent ``clearing``, every
    monomial x^e of total degree <= clearing satisfies
    (x^e after the map) = N_e / prod(den_i^clearing).
    """
    target = sys.variables
    num_pows = []
    den_pows = []
    for c in sys.coords:
        npw = [Polynomial.constant(target, 1)]
        dpw = [Polynomial.constant(target, 1)]
        for _ in range(clearing):
            npw.append(npw[-1] * c.num)
            dpw.append(dpw[-1] * c.den)
        num_pows.append(npw)
        den_pows.append(dpw)
    images = []
    for e in monos:
        t = Polynomial.constant(target, 1)
        for i, k in enumerate(e):
            if k:
                t = t * num_pows[i][k]
            if clearing - k:
                t = t * den_pows[i][clearing - k]
        images.append(t)
    return images


def _kernel_polynomials(sys, monos, columns) -> List[Polynomial]:
    """Nullspace of the sparse linear map given per-column as a polynomial."""
    rows: Dict[Tuple[int, ...], Dict[int, Fraction]] = {}
    for col, p in enumerate(columns):
        for expo, coeff in p.terms.items():
            rows.setdefault(expo, {})[col] = coeff
    basis = nullspace(list(rows.values()), len(monos))
    polys = []
    for vec in basis:
        terms = {monos[i]: v for i, v in enumerate(vec) if v}
        p = Polynomial(sys.variables, terms)
        if p.terms and p.leading()[1] < 0:
            p = -p
        polys.append(p)
    return polys


def polynomial_invariant_basis(sys: DynamicalSystem, d: int) -> List[Polynomial]:
    """Basis over Q of the polynomials of total degree <= d fixed by the map.

    Computed as the exact nullspace of the linear operator sending f to the
    numerator of (f after the map) - f, echelonized deterministically with
    columns in ascending graded-lex order; the constant 1 is always the
    first element.
    """
    if d < 0:
        raise PreconditionError("degree bound must be >= 0")
    require_dominant(sys)
    n = sys.dim
    monos = _monomials_upto(n, d)
    images = _composed_monomials(sys, monos, d)
    full_den = Polynomial.constant(sys.variables, 1)
    for c in sys.coords:
        full_den = full_den * c.den ** d
    columns = []
    for e, N in zip(monos, images):
        columns.append(N - Polynomial(sys.variables, {e: Fraction(1)}) * full_den)
    return _kernel_polynomials(sys, monos, columns)


# -- denominator catalog ----------------------------------------------------------


def _denominator_catalog(sys: DynamicalSystem, budget: SearchBudget) -> List[Polynomial]:
    """Products of iterated numerator/denominator factors, by total degree.

    Invariant denominators divide products of factors whose pullbacks stay
    proportional to themselves, and those concentrate among the factors of
    the iterates; the catalog collects the coprime factor basis of the first
    few iterates and all products up to the denominator degree budget.
    """
    if budget.max_den_degree == 0 or budget.denominator_catalog_depth == 0:
        return []
    pool = []
    current = sys
    for depth in range(budget.denominator_catalog_depth):
        for c in current.coords:
            pool.append(c.num)
            pool.append(c.den)
        if depth + 1 < budget.denominator_catalog_depth:
            current = compose(current, sys)
    factors = [f for f in coprime_factor_basis(pool)
               if f.total_degree <= budget.max_den_degree]
    products: List[Polynomial] = []

    def rec(idx, degree_left, acc):
        if len(products) >= _CATALOG_CAP:
            return
        if idx == len(factors):
            if not acc.is_constant:
                products.append(acc)
            return
        f = factors[idx]
        step = f.total_degree
        power = acc
        count = 0
        while True:
            rec(idx + 1, degree_left - count * step, power)
            count += 1
            if count * step > degree_left:
                break
            power = power * f
            if power.total_degree > budget.max_den_degree:
                break

    rec(0, budget.max_den_degree, Polynomial.constant(sys.variables, 1))
    products.sort(key=lambda p: (p.total_degree, grlex_key(p.leading()[0]), str(p)))
    return products


def _fixed_denominator_invariants(sys: DynamicalSystem, q: Polynomial,
                                  budget: SearchBudget,
                                  composed_cache: Optional[dict] = None
                                  ) -> List[RationalFunction]:
    """Stage 1: with q fixed, invariance of p/q is linear in p."""
    dp = budget.max_num_degree
    clearing = max(dp, q.total_degree)
    if composed_cache is not None and clearing in composed_cache:
        monos, images = composed_cache[clearing]
    else:
        monos = _monomials_upto(sys.dim, clearing)
        images = _composed_monomials(sys, monos, clearing)
        if composed_cache is not None:
            composed_cache[clearing] = (monos, images)
    keep = [i for i, e in enumerate(monos) if sum(e) <= dp]
    by_expo = {e: i for i, e in enumerate(monos)}
    q_image = Polynomial.zero(sys.variables)
    for e, c in q.terms.items():
        q_image = q_image + images[by_expo[e]].scaled(c)
    columns = []
    kept_monos = []
    for i in keep:
        e = monos[i]
        x_e = Polynomial(sys.variables, {e: Fraction(1)})
        columns.append(images[i] * q - q_image * x_e)
        kept_monos.append(e)
    polys = _kernel_polynomials(sys, kept_monos, columns)
    out = []
    for p in polys:
        f = RationalFunction(p, q)
        if not f.is_constant:
            out.append(f)
    return out


# -- stage 2: invariant pencils -----------------------------------------------------


def _pencil_matrix(t_coeffs, basis, size):
    """Antisymmetric matrix of the combination sum(t_k * basis_k)."""
    m = [[Fraction(0)] * size for _ in range(size)]
    for t, vec in zip(t_coeffs, basis):
        if not t:
            continue
        for (i, j), val in vec.items():
            m[i][j] += t * val
            m[j][i] -= t * val
    return m


def _fraction_matrix_rank(m) -> int:
    from .exactalg import rref
    _, pivots = rref([row[:] for row in m])
    return len(pivots)


def _grid_points(k: int):
    if k == 1:
        return [(Fraction(1),)]
    values = [Fraction(v) for v in (-2, -1, 0, 1, 2)]
    pts = []
    seen = set()
    for combo in itertools.product(values, repeat=k):
        if not any(combo):
            continue
        lead = next(v for v in combo if v)
        normed = tuple(v / lead for v in combo)
        if normed not in seen:
            seen.add(normed)
            pts.append(normed)
    return pts


def _univ_gcd(a: List[Fraction], b: List[Fraction]) -> List[Fraction]:
    """Monic gcd of univariate coefficient lists (ascending)."""

    def deg(p):
        d = len(p) - 1
        while d >= 0 and p[d] == 0:
            d -= 1
        return d

    def rem(p, q):
        p = p[:]
        dq = deg(q)
        lead = q[dq]
        while deg(p) >= dq and deg(p) >= 0:
            dp = deg(p)
            f = p[dp] / lead
            for i in range(dq + 1):
                p[dp - dq + i] -= f * q[i]
            p[dp] = Fraction(0)
        return p

    while deg(b) >= 0:
        a, b = b, rem(a, b)
    d = deg(a)
    if d < 0:
        return []
    return [c / a[d] for c in a[:d + 1]]


def _rational_roots(coeffs: List[Fraction]) -> List[Fraction]:
    """All rational roots of a univariate polynomial, exactly."""
    d = len(coeffs) - 1
    while d >= 0 and coeffs[d] == 0:
        d -= 1
    if d <= 0:
        return []
    if d == 1:
        return [-coeffs[0] / coeffs[1]]
    if d == 2:
        a, b, c = coeffs[2], coeffs[1], coeffs[0]
        disc = b * b - 4 * a * c
        if disc < 0:
            return []
        import math
        root = math.isqrt(disc.numerator)
        if root * root != disc.numerator:
            return []
        rootd = math.isqrt(disc.denominator)
        if rootd * rootd != disc.denominator:
            return []
        s = Fraction(root, rootd)
        return sorted({(-b + s) / (2 * a), (-b - s) / (2 * a)})
    # low stakes beyond degree 2: scan divisor candidates after clearing
    from math import gcd
    den = 1
    for c in coeffs:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    lead, const = ints[d], next((c for c in ints if c), 0)
    roots = [Fraction(0)] if ints[0] == 0 else []

    def divisors(n):
        n = abs(n)
        out = set()
        i = 1
        while i * i <= n:
            if n % i == 0:
                out.add(i)
                out.add(n // i)
            i += 1
        return out or {1}

    for p in divisors(const):
        for q in divisors(lead):
            for cand in (Fraction(p, q), Fraction(-p, q)):
                if sum(c * cand ** i for i, c in enumerate(coeffs)) == 0:
                    roots.append(cand)
    return sorted(set(roots))


def _decomposable_points(basis, size) -> List[Tuple[Fraction, ...]]:
    """Parameter points t where sum(t_k basis_k) has rank <= 2.

    For nullspaces of dimension 1 the basis vector itself is checked; for
    dimension 2 and 3 the quadratic decomposability conditions (vanishing of
    the 4x4 sub-Pfaffians) are solved exactly, via binary-form gcds and one
    resultant elimination; a deterministic grid augments the search so that
    degenerate positive-dimensional solution sets still yield witnesses.
    """
    k = len(basis)
    candidates: List[Tuple[Fraction, ...]] = []
    seen = set()

    def push(t):
        lead = next((v for v in t if v), None)
        if lead is None:
            return
        normed = tuple(v / lead for v in t)
        if normed in seen:
            return
        seen.add(normed)
        if _fraction_matrix_rank(_pencil_matrix(normed, basis, size)) == 2:
            candidates.append(normed)

    support = sorted({idx for vec in basis for pair in vec for idx in pair})
    tvars = tuple(f"t{i + 1}" for i in range(k))

    def entry(i, j) -> Polynomial:
        terms = {}
        for m, vec in enumerate(basis):
            val = vec.get((i, j))
            if val:
                e = [0] * k
                e[m] = 1
                terms[tuple(e)] = val
        return Polynomial(tvars, terms)

    # Enough quadrics to cut out the decomposable locus in practice; every
    # candidate is re-checked by an exact rank test in push(), so capping the
    # enumeration can only cost completeness, never soundness.
    quadrics = []
    for a, b, c, d in itertools.combinations(support, 4):
        q = (entry(a, b) * entry(c, d) - entry(a, c) * entry(b, d)
             + entry(a, d) * entry(b, c))
        if not q.is_zero:
            quadrics.append(q)
        if len(quadrics) >= 400:
            break

    if k == 1:
        push((Fraction(1),))
        return candidates

    if not quadrics:
        for t in _grid_points(k):
            push(t)
        return candidates

    if k == 2:
        # common projective roots of binary quadratics via univariate gcd
        g = None
        for q in quadrics:
            coeffs = [q.coefficient((i, 2 - i)) for i in range(3)]  # t2-descending
            univ = [coeffs[0], coeffs[1], coeffs[2]]  # ascending in t1 at t2=1
            g = univ if g is None else _univ_gcd(g, univ)
        for r in _rational_roots(g or []):
            push((r, Fraction(1)))
        if all(q.coefficient((2, 0)) == 0 for q in quadrics):
            push((Fraction(1), Fraction(0)))
        return candidates

    if k == 3:
        # eliminate t3 between pairs of quadrics; fall back to the grid when
        # the system is degenerate
        def split(q):
            # q = A t3^2 + B t3 + C with A in Q, B linear, C quadratic in t1,t2
            A = q.coefficient((0, 0, 2))
            B = {}
            C = {}
            for e, coeff in q.terms.items():
                if e[2] == 1:
                    B[(e[0], e[1])] = coeff
                elif e[2] == 0:
                    C[(e[0], e[1])] = coeff
            two = ("t1", "t2")
            return (Polynomial.constant(two, A), Polynomial(two, B), Polynomial(two, C))

        resultants = []
        for q1, q2 in itertools.combinations(quadrics, 2):
            a1, b1, c1 = split(q1)
            a2, b2, c2 = split(q2)
            res = ((a1 * c2 - c1 * a2) ** 2
                   - (a1 * b2 - b1 * a2) * (b1 * c2 - c1 * b2))
            if not res.is_zero:
                resultants.append(res)
        pairs_t12: List[Tuple[Fraction, Fraction]] = []
        if resultants:
            g = None
            for res in resultants:
                deg = res.total_degree
                univ = [res.coefficient((i, deg - i)) for i in range(deg + 1)]
                g = univ if g is None else _univ_gcd(g, univ)
            for r in _rational_roots(g or []):
                pairs_t12.append((r, Fraction(1)))
            pairs_t12.append((Fraction(1), Fraction(0)))
        for t1, t2 in pairs_t12:
            specialized = None
            for q in quadrics:
                coeffs = [Fraction(0)] * 3
                for e, coeff in q.terms.items():
                    coeffs[e[2]] += coeff * t1 ** e[0] * t2 ** e[1]
                specialized = (coeffs if specialized is None
                               else _univ_gcd(specialized, coeffs))
            if specialized is None:
                continue
            if not any(specialized):
                for t3 in (Fraction(0), Fraction(1), Fraction(-1), Fraction(2)):
                    push((t1, t2, t3))
            else:
                for t3 in _rational_roots(specialized):
                    push((t1, t2, t3))
        if all(q.coefficient((0, 0, 2)) == 0 for q in quadrics):
            push((Fraction(0), Fraction(0), Fraction(1)))
        for t in _grid_points(k):
            push(t)
        return candidates

    for t in _grid_points(k):
        push(t)
    return candidates


def _pencil_stage(sys: DynamicalSystem, budget: SearchBudget):
    """Returns (found invariants, conclusive flag)."""
    limit = budget.nullspace_rank1_limit
    if limit == 0:
        return [], False
    dmax = max(budget.max_num_degree, budget.max_den_degree)
    monos = _monomials_upto(sys.dim, dmax)
    s = len(monos)
    pairs = [(i, j) for i in range(s) for j in range(i + 1, s)]
    images = _composed_monomials(sys, monos, dmax)
    x_polys = [Polynomial(sys.variables, {e: Fraction(1)}) for e in monos]

    rows: Dict[Tuple[int, ...], Dict[int, Fraction]] = {}
    for col, (i, j) in enumerate(pairs):
        K = images[i] * x_polys[j] - images[j] * x_polys[i]
        for expo, coeff in K.terms.items():
            rows.setdefault(expo, {})[col] = coeff
    if len(pairs) - len(rows) > limit:
        # kernel dimension is at least #columns - #rows, already over budget
        return [], False
    basis_vecs = nullspace(list(rows.values()), len(pairs))
    if len(basis_vecs) > limit:
        return [], False
    if not basis_vecs:
        return [], True
    basis = []
    for vec in basis_vecs:
        entries = {pairs[i]: v for i, v in enumerate(vec) if v}
        basis.append(entries)
    found = []
    for t in _decomposable_points(basis, s):
        m = _pencil_matrix(t, basis, s)
        cols = [tuple(m[r][c] for r in range(s)) for c in range(s)]
        first = next((c for c in cols if any(c)), None)
        if first is None:
            continue
        second = next((c for c in cols if not in_span([first], c)), None)
        if second is None:
            continue
        p = Polynomial(sys.variables, {monos[i]: v for i, v in enumerate(first) if v})
        q = Polynomial(sys.variables, {monos[i]: v for i, v in enumerate(second) if v})
        if p.leading()[1] < 0:
            p = -p
        if q.leading()[1] < 0:
            q = -q
        f = RationalFunction(p, q)
        if f.is_constant or pullback(sys, f) != f:
            continue
        found.append(f)
    return found, True


# -- deduplication and reports ---------------------------------------------------


def _laurent_products(found: Sequence[RationalFunction], budget: SearchBudget,
                      variables) -> List[RationalFunction]:
    """Products of the found invariants with integer exponents, degree-capped.

    Invariants form a field, so a candidate algebraically dependent on the
    prior ones is uninformative exactly when it is a rational combination of
    them; the linear span of these capped Laurent products is the practical
    test for that.
    """
    bound = max(budget.max_num_degree, budget.max_den_degree)
    total = max(budget.max_num_degree, 1)
    out = [RationalFunction.constant(variables, 1)]
    k = len(found)
    if k == 0:
        return out
    degrees = [g.degree for g in found]

    def vectors(idx, weight_left, degree_left):
        # degree_left prunes products whose degree could only come back
        # under the budget through cancellation; missing those merely keeps
        # an extra candidate later, it never drops a sound invariant
        if idx == k:
            yield ()
            return
        cap = min(weight_left, total,
                  degree_left // degrees[idx] if degrees[idx] else total)
        for e in range(-cap, cap + 1):
            spent = abs(e) * degrees[idx]
            for rest in vectors(idx + 1, weight_left - abs(e),
                                degree_left - spent):
                yield (e,) + rest

    for expos in vectors(0, total, bound):
        if not any(expos):
            continue
        try:
            prod = RationalFunction.constant(variables, 1)
            for g, e in zip(found, expos):
                if e:
                    prod = prod * g ** e
        except ZeroDivisionError:
            continue
        if prod.degree <= bound:
            out.append(prod)
    return out


class _ClearedPool:
    """A Laurent-product pool over its common denominator, echelonized once
    and reused across candidates.

    Membership of f first requires f.den to divide the pool lcm (the
    denominator of any Q-combination does), then reduces the cleared
    numerator against the cached echelon; a nonzero remainder or any
    monomial outside the pool support is a certain negative.
    """

    def __init__(self, pool: Sequence[RationalFunction]):
        seen = set()
        self.pool = []
        for g in pool:
            if g not in seen:
                seen.add(g)
                self.pool.append(g)
        den = self.pool[0].den
        for g in self.pool[1:]:
            den = poly_lcm(den, g.den)
        self.den = den
        self.index: Dict[Tuple[int, ...], int] = {}
        sparse_rows = []
        for g in self.pool:
            p = g.num * divide_exact(den, g.den)
            row = {}
            for e, c in p.terms.items():
                row[self.index.setdefault(e, len(self.index))] = c
            sparse_rows.append(row)
        self.rows, self.pivots = rref_sparse(sparse_rows)

    def contains(self, f: RationalFunction) -> bool:
        scale = try_divide(self.den, f.den)
        if scale is None:
            return False
        target_poly = f.num * scale
        target: Dict[int, Fraction] = {}
        for e, c in target_poly.terms.items():
            idx = self.index.get(e)
            if idx is None:
                return False
            target[idx] = c
        for row, pc in zip(self.rows, self.pivots):
            coeff = target.get(pc)
            if coeff:
                for c, v in row.items():
                    s = target.get(c, Fraction(0)) - coeff * v
                    if s:
                        target[c] = s
                    else:
                        target.pop(c, None)
        return not target


def _in_function_span(pool: Sequence[RationalFunction],
                      f: RationalFunction) -> bool:
    """Whether f is a Q-linear combination of the pool, decided exactly."""
    if not pool:
        return False
    return _ClearedPool(pool).contains(f)


class _Collector:
    """Order-preserving deduplication per the report contract.

    A candidate is kept iff it certifiably raises the independence rank or
    lies outside the Q-span of the capped Laurent products of the prior
    invariants.  The rank test uses seeded evaluation points, which can only
    under-report rank: a missed increase falls through to the span test,
    where an algebraically independent candidate can never be a member, so
    the kept set is identical either way.
    """

    def __init__(self, sys: DynamicalSystem, budget: SearchBudget):
        self.sys = sys
        self.budget = budget
        self.found: List[RationalFunction] = []
        self.rank = 0
        rng = random.Random(0x6465647570)
        self._points = [
            tuple(Fraction(rng.randint(-999, 999)) for _ in sys.variables)
            for _ in range(3)]
        self._rows = [[] for _ in self._points]  # cached rows per point
        self._pool = None

    @staticmethod
    def _jacobian_row(g: RationalFunction, point):
        qv = g.den.evaluate(point)
        if qv == 0:
            raise ZeroDivisionError
        pv = g.num.evaluate(point)
        return [(g.num.derivative(j).evaluate(point) * qv
                 - pv * g.den.derivative(j).evaluate(point))
                for j in range(len(point))]

    def _rank_certainly_grew(self, f: RationalFunction) -> bool:
        from .exactalg import rref
        for idx, point in enumerate(self._points):
            if self._rows[idx] is None or len(self._rows[idx]) < len(self.found):
                continue  # a found function has a pole here; point unusable
            try:
                row = self._jacobian_row(f, point)
            except ZeroDivisionError:
                continue
            _, pivots = rref(self._rows[idx] + [row])
            if len(pivots) > self.rank:
                return True
        return False

    def _remember(self, f: RationalFunction):
        self.found.append(f)
        for idx, point in enumerate(self._points):
            if self._rows[idx] is None:
                continue
            try:
                self._rows[idx].append(self._jacobian_row(f, point))
            except ZeroDivisionError:
                self._rows[idx] = None

    def offer(self, f: RationalFunction):
        if f.is_constant:
            return
        if pullback(self.sys, f) != f:
            raise AssertionError(f"search produced a non-invariant: {f}")
        if any(f == g for g in self.found):
            return
        if self._rank_certainly_grew(f):
            self._remember(f)
            self.rank += 1
            self._pool = None
            return
        if self._pool is None:
            self._pool = _ClearedPool(_laurent_products(
                self.found, self.budget, self.sys.variables))
        if not self._pool.contains(f):
            self._remember(f)
            self._pool = None


def rational_invariant_search(sys: DynamicalSystem,
                              budget: SearchBudget = DEFAULT_BUDGET,
                              jobs: int = 1) -> List[RationalFunction]:
    """Exact invariants found within the budget, deduplicated.

    The output is deterministic: stage order, ascending catalog order, and
    echelonized kernels fix the discovery order.  An exhausted budget is not
    an error; completeness beyond the budget is never claimed.
    """
    require_dominant(sys)
    collector = _Collector(sys, budget)
    for p in polynomial_invariant_basis(sys, budget.max_num_degree):
        if not p.is_constant:
            collector.offer(RationalFunction(p))
    catalog = _denominator_catalog(sys, budget)
    composed_cache: dict = {}
    for clearing in sorted({max(budget.max_num_degree, q.total_degree)
                            for q in catalog}):
        monos = _monomials_upto(sys.dim, clearing)
        composed_cache[clearing] = (monos, _composed_monomials(sys, monos, clearing))
    if jobs > 1 and len(catalog) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            batches = list(pool.map(
                lambda q: _fixed_denominator_invariants(sys, q, budget,
                                                        composed_cache),
                catalog))
    else:
        batches = [_fixed_denominator_invariants(sys, q, budget, composed_cache)
                   for q in catalog]
    for batch in batches:
        for f in batch:
            collector.offer(f)
    if not collector.found:
        pencil_found, _ = _pencil_stage(sys, budget)
        for f in pencil_found:
            collector.offer(f)
    return collector.found


def independence_rank(fs: Sequence[RationalFunction]) -> int:
    """Transcendence-degree contribution of the given functions."""
    return jacobian_rank(fs)


def adim_lower_bound(sys: DynamicalSystem, budget: SearchBudget = DEFAULT_BUDGET,
                     jobs: int = 1) -> InvariantReport:
    """Search, rank, and select a maximal independent generating subset.

    The resulting independence rank is a lower bound for the number of
    algebraically independent invariants; it never exceeds the dimension.
    """
    require_dominant(sys)
    invariants = rational_invariant_search(sys, budget, jobs)
    # greedy selection with the exact rank oracle: the subset it ends with is
    # a maximal independent one, so its size is the rank of the whole list
    generators: List[RationalFunction] = []
    for f in invariants:
        if len(generators) == sys.dim:
            break
        if jacobian_rank(generators + [f]) > len(generators):
            generators.append(f)
    rank = len(generators)
    assert rank <= sys.dim
    return InvariantReport(system=sys, budget=budget,
                           invariants=tuple(invariants),
                           independence_rank=rank, verified=True,
                           reduction_generators=tuple(generators))


def square_gain_check(sys: DynamicalSystem, budget: SearchBudget = DEFAULT_BUDGET,
                      jobs: int = 1) -> SquareGainReport:
    """Whether the diagonal square acquires invariants beyond the pullbacks.

    A positive gain on the second cartesian power is the canonical witness
    that products with some partner system gain invariants at all, and it
    predicts a positive-dimensional translational image, so the base degree
    profile is attached as evidence whenever a new invariant is found.
    """
    require_dominant(sys)
    base = adim_lower_bound(sys, budget, jobs)
    square = diagonal_power(sys, 2)
    square_report = adim_lower_bound(square, budget, jobs)
    n = sys.dim
    first = list(range(n))
    second = list(range(n, 2 * n))
    pulls = []
    for g in base.invariants:
        pulls.append(g.embed(square.variables, first))
        pulls.append(g.embed(square.variables, second))
    pullback_rank = jacobian_rank(pulls)
    new_found = square_report.independence_rank > pullback_rank
    witness = None
    if new_found:
        for f in square_report.invariants:
            if jacobian_rank(pulls + [f]) > pullback_rank:
                witness = f
                break
        if witness is None:
            raise AssertionError("rank gain without a single witness")
    profile = degree_sequence(sys, _EVIDENCE_WINDOW) if new_found else None
    return SquareGainReport(base_rank=base.independence_rank,
                            square_rank=square_report.independence_rank,
                            pullback_rank=pullback_rank,
                            new_invariant_found=new_found,
                            witness=witness,
                            degree_profile=profile)

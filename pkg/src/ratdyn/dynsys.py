"""Rational self-maps of affine n-space: iteration, products, pullback.

A system is an ordered variable tuple plus one normalized rational function
per coordinate.  All operations are pure; systems are immutable and safe to
share across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

from .errors import (IndeterminacyError, NotDominantError, PreconditionError,
                     VariableMismatchError)
from .exactalg import RationalFunction, jacobian_rank, substitute

DOMINANT = "dominant"
NOT_DOMINANT = "not-dominant"
INCONCLUSIVE = "inconclusive"

GROWTH_BOUNDED = "bounded"
GROWTH_POLYNOMIAL = "polynomial-suspected"
GROWTH_EXPONENTIAL = "exponential-suspected"


@dataclass(frozen=True)
class DynamicalSystem:
    """A rational map of affine space to itself, coordinate by coordinate."""

    variables: Tuple[str, ...]
    coords: Tuple[RationalFunction, ...]

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "coords", tuple(self.coords))
        if len(self.coords) != len(self.variables):
            raise VariableMismatchError(
                f"{len(self.coords)} coordinates for {len(self.variables)} "
                "variables: only self-maps of affine n-space are admitted")
        for c in self.coords:
            if c.variables != self.variables:
                raise VariableMismatchError(
                    f"coordinate over {c.variables}, expected {self.variables}")

    @property
    def dim(self) -> int:
        return len(self.variables)

    @property
    def degree(self) -> int:
        """max over coordinates of max(deg num, deg den), after normalization."""
        return max(c.degree for c in self.coords)

    @classmethod
    def identity(cls, variables: Sequence[str]) -> "DynamicalSystem":
        vars_t = tuple(variables)
        return cls(vars_t, tuple(RationalFunction.variable(vars_t, v) for v in vars_t))

    def __str__(self):
        body = ", ".join(f"{v} -> {c}" for v, c in zip(self.variables, self.coords))
        return f"({body})"


@dataclass(frozen=True)
class DegreeProfile:
    """Degrees of the first N iterates plus a documented growth heuristic.

    ``degrees[i]`` is the degree of the (i+1)-st iterate.  The class labels
    are evidence, not proof: bounded degrees are necessary for the iterates
    to live in one algebraic family, never sufficient on their own.
    """

    degrees: Tuple[int, ...]
    growth_class: str
    fitted_rate: Fraction


def validate_dominant(sys: DynamicalSystem, trials: int = 4) -> str:
    """Exact dominance verdict via the rank of the coordinate Jacobian.

    A seeded random evaluation may short-circuit to ``dominant``; otherwise
    the fraction-free elimination decides, so ``inconclusive`` is never
    returned by this exact implementation.
    """
    if trials < 1:
        raise PreconditionError("trials must be >= 1")
    n = sys.dim
    r = jacobian_rank(sys.coords)
    return DOMINANT if r == n else NOT_DOMINANT


def require_dominant(sys: DynamicalSystem):
    if validate_dominant(sys) != DOMINANT:
        raise NotDominantError(f"system {sys} is not dominant")


def compose(outer: DynamicalSystem, inner: DynamicalSystem) -> DynamicalSystem:
    """The system x -> outer(inner(x))."""
    if outer.variables != inner.variables:
        raise VariableMismatchError("composition of systems over different variables")
    try:
        coords = tuple(substitute(c, inner.coords) for c in outer.coords)
    except IndeterminacyError as exc:
        raise IndeterminacyError(
            "composition fell into a pole set; the maps are not composable "
            "as dominant rational maps") from exc
    return DynamicalSystem(outer.variables, coords)


def iterate(sys: DynamicalSystem, m: int) -> DynamicalSystem:
    """m-th iterate with fully normalized coordinates (binary powering)."""
    if m < 0:
        raise PreconditionError("iteration count must be >= 0")
    if m == 0:
        return DynamicalSystem.identity(sys.variables)
    result = None
    base = sys
    while m:
        if m & 1:
            result = base if result is None else compose(result, base)
        m >>= 1
        if m:
            base = compose(base, base)
    return result


def _fresh_names(groups: Sequence[Sequence[str]]) -> List[List[str]]:
    """Rename the i-th group by suffixing its copy index, disambiguating
    further with underscores if the naive names collide."""
    names = [[f"{v}{i + 1}" for v in group] for i, group in enumerate(groups)]
    flat = [v for g in names for v in g]
    if len(set(flat)) != len(flat):
        names = [[f"{v}_{i + 1}" for v in group] for i, group in enumerate(groups)]
        flat = [v for g in names for v in g]
        if len(set(flat)) != len(flat):
            raise VariableMismatchError("cannot build fresh variable names")
    return names


def product(a: DynamicalSystem, b: DynamicalSystem) -> DynamicalSystem:
    """Coordinate-wise product on the disjoint union of the variables.

    Variables of ``b`` are suffixed when they collide with those of ``a``.
    """
    b_names = list(b.variables)
    taken = set(a.variables)
    for i, v in enumerate(b_names):
        if v in taken:
            k = 2
            while f"{v}_{k}" in taken or f"{v}_{k}" in b_names:
                k += 1
            b_names[i] = f"{v}_{k}"
        taken.add(b_names[i])
    variables = a.variables + tuple(b_names)
    pos_a = list(range(a.dim))
    pos_b = list(range(a.dim, a.dim + b.dim))
    coords = tuple(c.embed(variables, pos_a) for c in a.coords)
    coords += tuple(c.embed(variables, pos_b) for c in b.coords)
    return DynamicalSystem(variables, coords)


def diagonal_power(sys: DynamicalSystem, m: int) -> DynamicalSystem:
    """m-fold product of the system with itself, copy i renamed v -> v{i}."""
    if m < 1:
        raise PreconditionError("power must be >= 1")
    names = _fresh_names([sys.variables] * m)
    variables = tuple(v for group in names for v in group)
    coords = []
    for i in range(m):
        offset = i * sys.dim
        positions = list(range(offset, offset + sys.dim))
        coords.extend(c.embed(variables, positions) for c in sys.coords)
    return DynamicalSystem(variables, tuple(coords))


def pullback(sys: DynamicalSystem, f: RationalFunction) -> RationalFunction:
    """The composition f after the map: the field endomorphism f -> f(coords)."""
    if f.variables != sys.variables:
        raise VariableMismatchError("function over different variables than the system")
    return substitute(f, sys.coords)


def symmetrize_iterate_invariant(sys: DynamicalSystem, f: RationalFunction,
                                 m: int) -> List[RationalFunction]:
    """Turn an invariant of the m-th iterate into invariants of the map itself.

    An f fixed by the m-th iterate is a root of the degree-m polynomial whose
    roots are the m successive pullbacks of f, so the elementary symmetric
    functions e_1..e_m of that orbit are fixed by the map.  They are returned
    in order; constant values may appear and are retained (check
    ``is_constant`` on the entries).
    """
    if m < 1:
        raise PreconditionError("m must be >= 1")
    orbit = [f]
    for _ in range(m - 1):
        orbit.append(pullback(sys, orbit[-1]))
    if pullback(sys, orbit[-1]) != f:
        raise PreconditionError("f is not invariant under the m-th iterate")
    # e_k update: after absorbing the next orbit element o,
    # e_k <- e_k + o * e_{k-1}
    elem = [RationalFunction.constant(f.variables, 1)]
    for o in orbit:
        elem.append(RationalFunction.constant(f.variables, 0))
        for k in range(len(elem) - 1, 0, -1):
            elem[k] = elem[k] + o * elem[k - 1]
    outputs = elem[1:]
    for g in outputs:
        if pullback(sys, g) != g:
            raise AssertionError(f"symmetrized output {g} failed invariance")
    return outputs


def _halfwindow_slope(xs: List[float], ys: List[float]) -> float:
    n = len(xs)
    mx = sum(xs) / n
    my = sum(ys) / n
    var = sum((x - mx) ** 2 for x in xs)
    if var == 0:
        return 0.0
    cov = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    return cov / var


def degree_sequence(sys: DynamicalSystem, N: int) -> DegreeProfile:
    """Degrees of the first N normalized iterates, classified heuristically.

    Classification rule: bounded when the last ceil(N/2) degrees take at most
    two distinct values and do not exceed the maximum seen earlier in the
    window; exponential-suspected when the least-squares slope of
    log(degrees) over the last ceil(N/2) points exceeds 0.1; polynomial-
    suspected otherwise.  The sequence is not assumed monotone (normalization
    can drop degrees).
    """
    if N < 1:
        raise PreconditionError("window length must be >= 1")
    require_dominant(sys)
    degrees = []
    current = sys
    for _ in range(N):
        degrees.append(current.degree)
        if len(degrees) < N:
            current = compose(current, sys)
    half = math.ceil(N / 2)
    tail = degrees[N - half:]
    head = degrees[:N - half]
    if len(set(tail)) <= 2 and (not head or max(tail) <= max(head)):
        return DegreeProfile(tuple(degrees), GROWTH_BOUNDED, Fraction(0))
    idx = list(range(N - half + 1, N + 1))
    logs = [math.log(max(d, 1)) for d in tail]
    slope = _halfwindow_slope([float(i) for i in idx], logs)
    if slope > 0.1:
        rate = Fraction(slope).limit_denominator(10 ** 6)
        return DegreeProfile(tuple(degrees), GROWTH_EXPONENTIAL, rate)
    exponent = _halfwindow_slope([math.log(i) for i in idx], logs)
    rate = Fraction(exponent).limit_denominator(10 ** 6)
    return DegreeProfile(tuple(degrees), GROWTH_POLYNOMIAL, rate)

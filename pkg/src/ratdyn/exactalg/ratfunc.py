"""Normalized rational functions over Q and substitution of rational maps.

A rational function is stored as a reduced pair (num, den): the polynomial
gcd of the two parts is constant, the pair has coprime integer coefficients
jointly, and the denominator's graded-lex leading coefficient is positive.
This normal form is canonical, so equality of values implies equality of the
stored representation.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence, Tuple

from ..errors import IndeterminacyError, VariableMismatchError, ZeroDenominatorError
from .poly import (Polynomial, divide_exact, fraction_gcd, integer_primitive,
                   poly_gcd)


class RationalFunction:
    """Quotient of two polynomials over the same variables, kept in normal form."""

    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial, den: Polynomial = None):
        if den is None:
            den = Polynomial.constant(num.variables, 1)
        if num.variables != den.variables:
            raise VariableMismatchError("numerator and denominator variables differ")
        if den.is_zero:
            raise ZeroDenominatorError("denominator is the zero polynomial")
        if num.is_zero:
            self.num = num
            self.den = Polynomial.constant(num.variables, 1)
            return
        g = poly_gcd(num, den)
        if not g.is_constant:
            num = divide_exact(num, g)
            den = divide_exact(den, g)
        cn, _ = integer_primitive(num)
        cd, _ = integer_primitive(den)
        scale = fraction_gcd(cn, cd)
        if cd < 0:
            scale = -scale
        self.num = num.scaled(1 / scale)
        self.den = den.scaled(1 / scale)

    # -- constructors -------------------------------------------------------

    @classmethod
    def constant(cls, variables: Sequence[str], value) -> "RationalFunction":
        return cls(Polynomial.constant(variables, value))

    @classmethod
    def variable(cls, variables: Sequence[str], name: str) -> "RationalFunction":
        return cls(Polynomial.variable(variables, name))

    # -- queries -------------------------------------------------------------

    @property
    def variables(self) -> Tuple[str, ...]:
        return self.num.variables

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def is_constant(self) -> bool:
        return self.num.is_constant and self.den.is_constant

    def constant_value(self) -> Fraction:
        return self.num.constant_value() / self.den.constant_value()

    @property
    def degree(self) -> int:
        """max(deg num, deg den) of the normal form."""
        return max(self.num.total_degree, self.den.total_degree)

    # -- arithmetic ----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            if other.variables != self.variables:
                raise VariableMismatchError(
                    f"variables {other.variables} vs {self.variables}")
            return other
        if isinstance(other, (int, Fraction)):
            return RationalFunction.constant(self.variables, other)
        if isinstance(other, Polynomial):
            return RationalFunction(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        out = RationalFunction.__new__(RationalFunction)
        out.num = -self.num
        out.den = self.den
        return out

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.num.is_zero:
            raise ZeroDenominatorError("division by the zero function")
        return RationalFunction(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise ValueError("exponent must be an integer")
        if n < 0:
            if self.num.is_zero:
                raise ZeroDenominatorError("negative power of zero")
            return RationalFunction(self.den ** (-n), self.num ** (-n))
        return RationalFunction(self.num ** n, self.den ** n)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Polynomial)):
            other = self._coerce(other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return not self.num.is_zero

    # -- calculus and evaluation ----------------------------------------------

    def derivative(self, index: int) -> "RationalFunction":
        p, q = self.num, self.den
        return RationalFunction(p.derivative(index) * q - p * q.derivative(index),
                                q * q)

    def evaluate(self, point: Sequence[Fraction]) -> Fraction:
        d = self.den.evaluate(point)
        if d == 0:
            raise ZeroDivisionError("evaluation at a pole")
        return self.num.evaluate(point) / d

    def embed(self, new_variables: Sequence[str], positions: Sequence[int]) -> "RationalFunction":
        out = RationalFunction.__new__(RationalFunction)
        out.num = self.num.embed(new_variables, positions)
        out.den = self.den.embed(new_variables, positions)
        return out

    def __str__(self):
        if self.den == Polynomial.constant(self.variables, 1):
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"RationalFunction({self})"


def ratfunc_normalize(num: Polynomial, den: Polynomial) -> RationalFunction:
    """Canonical reduced form of num/den; idempotent, value-preserving."""
    return RationalFunction(num, den)


def substitute(f: RationalFunction, images: Sequence[RationalFunction]) -> RationalFunction:
    """Exact composition f(images).

    ``images`` supplies one rational function per variable of f, all over a
    common variable tuple (which becomes the result's variable tuple).  Raises
    IndeterminacyError when the composed denominator vanishes identically.
    """
    if len(images) != len(f.variables):
        raise VariableMismatchError(
            f"{len(images)} images for {len(f.variables)} variables")
    if not images:
        raise VariableMismatchError("substitution needs at least one variable")
    target = images[0].variables
    for g in images:
        if g.variables != target:
            raise VariableMismatchError("images over different variable tuples")

    # Clear every image denominator with a single power product: with
    # d_i = max exponent of variable i across num and den, both compositions
    # share the denominator prod den_i^{d_i}, which then cancels.
    bounds = tuple(max(a, b) for a, b in
                   zip(f.num.max_exponents(), f.den.max_exponents()))
    num_pows = []
    den_pows = []
    for g, d in zip(images, bounds):
        npw = [Polynomial.constant(target, 1)]
        dpw = [Polynomial.constant(target, 1)]
        for _ in range(d):
            npw.append(npw[-1] * g.num)
            dpw.append(dpw[-1] * g.den)
        num_pows.append(npw)
        den_pows.append(dpw)

    def compose(p: Polynomial) -> Polynomial:
        acc = Polynomial.zero(target)
        for e, c in p.terms.items():
            t = Polynomial.constant(target, c)
            for i, k in enumerate(e):
                t = t * num_pows[i][k]
                if bounds[i] - k:
                    t = t * den_pows[i][bounds[i] - k]
            acc = acc + t
        return acc

    den_image = compose(f.den)
    if den_image.is_zero:
        raise IndeterminacyError("composition lands inside the pole set")
    return RationalFunction(compose(f.num), den_image)

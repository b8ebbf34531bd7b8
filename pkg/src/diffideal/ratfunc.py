"""Rational functions: quotients of polynomials kept in canonical form."""

from __future__ import annotations

from fractions import Fraction

from .errors import PreconditionError, RingMismatchError
from .polys import Poly, PolyRing, exact_divide, multivariate_gcd


class RationalFunction:
    """``num / den`` with gcd(num, den) = 1 and ``den`` monic in the ring order.

    Because the form is canonical, equality is structural.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly = None, *, _canonical=False):
        if den is None:
            den = num.ring.one()
        if num.ring != den.ring:
            raise RingMismatchError("numerator and denominator live in different rings")
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if not _canonical:
            num, den = _canonicalize(num, den)
        self.num = num
        self.den = den

    @property
    def ring(self) -> PolyRing:
        return self.num.ring

    @classmethod
    def from_poly(cls, p: Poly) -> "RationalFunction":
        return cls(p, p.ring.one(), _canonical=True)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den == 1

    def as_poly(self) -> Poly:
        if not self.is_polynomial():
            raise PreconditionError(f"{self} is not a polynomial")
        return self.num

    def is_ground(self) -> bool:
        return self.num.is_ground() and self.den.is_ground()

    def involves_variables(self) -> bool:
        return self.num.involves_variables() or self.den.involves_variables()

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            if other.ring != self.ring:
                raise RingMismatchError("ring mismatch")
            return other
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise RingMismatchError("ring mismatch")
            return RationalFunction.from_poly(other)
        if isinstance(other, (int, Fraction)):
            return RationalFunction.from_poly(self.ring.const(other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, _canonical=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    def __pow__(self, n: int):
        if n < 0:
            return RationalFunction(self.den**-n, self.num**-n)
        return RationalFunction(self.num**n, self.den**n, _canonical=True)

    def __eq__(self, other):
        if isinstance(other, RationalFunction):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (Poly, int, Fraction)):
            return self.den == 1 and self.num == other
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def __str__(self):
        from .textsyntax import format_ratfunc

        return format_ratfunc(self)

    def __repr__(self):
        return f"RationalFunction({self})"


def _canonicalize(num: Poly, den: Poly):
    if num.is_zero():
        return num, den.ring.one()
    if not den.is_ground():
        g = multivariate_gcd(num, den)
        if not g.is_ground():
            num = exact_divide(num, g)
            den = exact_divide(den, g)
    lc = den.leading_coeff()
    if lc != 1:
        num = num * (1 / lc)
        den = den * (1 / lc)
    return num, den


def ratfunc_simplify(r: RationalFunction) -> RationalFunction:
    """Canonical form of ``r``; values built by this module are already canonical."""
    return RationalFunction(r.num, r.den)


def cross_equal(r: RationalFunction, s: RationalFunction) -> bool:
    return r.num * s.den == s.num * r.den

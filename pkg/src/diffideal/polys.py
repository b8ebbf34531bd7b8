"""Sparse exact multivariate polynomials over Q.

A polynomial is a map from exponent tuples to nonzero ``Fraction``
coefficients. Exponent tuples have one slot per ring symbol, variables first
and then parameters, in declaration order. The zero polynomial is the empty
map.

Values are never mutated after construction, so they can be shared freely
between threads.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Dict, Iterable, Iterator, Mapping, Optional, Sequence, Tuple

from .errors import PreconditionError, RingMismatchError

Exponent = Tuple[int, ...]
Terms = Dict[Exponent, Fraction]

ORDER_KINDS = ("lex", "grevlex")


class MonomialOrder:
    """A monomial order: ``lex`` or ``grevlex`` over a permutation of the symbols.

    ``perm`` lists symbol indices from most to least significant; the
    identity permutation means declaration order (first symbol largest).
    """

    __slots__ = ("kind", "perm", "key")

    def __init__(self, kind: str = "grevlex", perm: Optional[Sequence[int]] = None, nsyms: int = 0):
        if kind not in ORDER_KINDS:
            raise PreconditionError(f"unknown monomial order {kind!r}; expected one of {ORDER_KINDS}")
        if perm is None:
            perm = tuple(range(nsyms))
        perm = tuple(perm)
        if sorted(perm) != list(range(len(perm))):
            raise PreconditionError(f"not a permutation: {perm}")
        self.kind = kind
        self.perm = perm
        self.key = _order_key(kind, perm)

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and (self.kind, self.perm) == (other.kind, other.perm)

    def __hash__(self):
        return hash((self.kind, self.perm))

    def __repr__(self):
        return f"MonomialOrder({self.kind!r}, {self.perm})"


@lru_cache(maxsize=None)
def _order_key(kind, perm):
    identity = perm == tuple(range(len(perm)))
    if kind == "lex":
        if identity:
            return lambda e: e
        return lambda e: tuple(e[i] for i in perm)
    rev = tuple(reversed(perm))
    return lambda e: (sum(e), tuple(-e[i] for i in rev))


class PolyRing:
    """The ambient ring Q[symbols] with a default monomial order."""

    __slots__ = ("symbols", "nvars", "order", "_index")

    def __init__(self, symbols: Sequence[str], nvars: Optional[int] = None, order: str = "grevlex"):
        symbols = tuple(symbols)
        if len(set(symbols)) != len(symbols):
            raise PreconditionError(f"duplicate symbol names in {symbols}")
        self.symbols = symbols
        # number of leading symbols that are main variables; the rest are parameters
        self.nvars = len(symbols) if nvars is None else nvars
        self.order = MonomialOrder(order, nsyms=len(symbols))
        self._index = {s: i for i, s in enumerate(symbols)}

    @property
    def ngens(self) -> int:
        return len(self.symbols)

    @property
    def variables(self) -> Tuple[str, ...]:
        return self.symbols[: self.nvars]

    @property
    def parameters(self) -> Tuple[str, ...]:
        return self.symbols[self.nvars :]

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise PreconditionError(f"unknown symbol {name!r}") from None

    def with_order(self, order: str) -> "PolyRing":
        return PolyRing(self.symbols, self.nvars, order)

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and self.symbols == other.symbols
            and self.nvars == other.nvars
            and self.order == other.order
        )

    def __hash__(self):
        return hash((self.symbols, self.nvars, self.order))

    def __repr__(self):
        return f"PolyRing({list(self.symbols)}, nvars={self.nvars}, order={self.order.kind!r})"

    @property
    def zero_exp(self) -> Exponent:
        return (0,) * len(self.symbols)

    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return self.const(1)

    def const(self, c) -> "Poly":
        c = Fraction(c)
        return Poly(self, {self.zero_exp: c} if c else {})

    def gen(self, name_or_index) -> "Poly":
        i = name_or_index if isinstance(name_or_index, int) else self.index(name_or_index)
        e = [0] * len(self.symbols)
        e[i] = 1
        return Poly(self, {tuple(e): Fraction(1)})

    def gens(self) -> Tuple["Poly", ...]:
        return tuple(self.gen(i) for i in range(len(self.symbols)))

    def monomial(self, exp: Exponent, coeff=1) -> "Poly":
        coeff = Fraction(coeff)
        return Poly(self, {tuple(exp): coeff} if coeff else {})

    def from_dict(self, terms: Mapping[Exponent, object]) -> "Poly":
        out: Terms = {}
        n = len(self.symbols)
        for e, c in terms.items():
            e = tuple(e)
            if len(e) != n or any(x < 0 for x in e):
                raise PreconditionError(f"bad exponent vector {e} for {n} symbols")
            c = Fraction(c)
            if c:
                out[e] = out.get(e, 0) + c
        return Poly(self, {e: c for e, c in out.items() if c})

    def monomials_up_to(self, degree: int) -> list:
        """All exponent vectors of total degree <= ``degree``, sorted descending in the ring order."""
        return sorted(_exponents_up_to(len(self.symbols), degree), key=self.order.key, reverse=True)


def _exponents_up_to(n: int, degree: int) -> Iterator[Exponent]:
    if n == 0:
        yield ()
        return
    for first in range(degree, -1, -1):
        for rest in _exponents_up_to(n - 1, degree - first):
            yield (first,) + rest


class Poly:
    """Immutable sparse polynomial. Build through ``PolyRing`` helpers or arithmetic."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: PolyRing, terms: Terms):
        # callers guarantee canonical form: Fraction values, no zeros
        self.ring = ring
        self._terms = terms
        self._hash = None

    @property
    def terms(self) -> Mapping[Exponent, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def is_ground(self) -> bool:
        """True for constants of Q (no symbol occurs)."""
        return not self._terms or (len(self._terms) == 1 and self.ring.zero_exp in self._terms)

    def ground_value(self) -> Fraction:
        if not self.is_ground():
            raise PreconditionError(f"{self} is not a rational constant")
        return self._terms.get(self.ring.zero_exp, Fraction(0))

    def coeff(self, exp: Exponent) -> Fraction:
        return self._terms.get(tuple(exp), Fraction(0))

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise RingMismatchError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other._terms:
            return self
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, {e: -c for e, c in self._terms.items()})

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
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            if not other:
                return self.ring.zero()
            return Poly(self.ring, {e: c * other for e, c in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self._terms or not other._terms:
            return self.ring.zero()
        out: Terms = {}
        for ea, ca in self._terms.items():
            for eb, cb in other._terms.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                out[e] = out.get(e, 0) + ca * cb
        return Poly(self.ring, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise PreconditionError("polynomial powers need a non-negative integer exponent")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self.is_ground() and self.ground_value() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    def mul_term(self, exp: Exponent, coeff) -> "Poly":
        coeff = Fraction(coeff)
        if not coeff:
            return self.ring.zero()
        return Poly(
            self.ring,
            {tuple(x + y for x, y in zip(e, exp)): c * coeff for e, c in self._terms.items()},
        )

    # -- degrees and support ------------------------------------------------

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self._terms), default=-1)

    def degree_in_variables(self) -> int:
        """Total degree counting main variables only."""
        n = self.ring.nvars
        return max((sum(e[:n]) for e in self._terms), default=-1)

    def support(self) -> set:
        """Indices of symbols that occur."""
        out = set()
        for e in self._terms:
            out.update(i for i, x in enumerate(e) if x)
        return out

    def involves_variables(self) -> bool:
        n = self.ring.nvars
        return any(any(e[:n]) for e in self._terms)

    # -- orders ---------------------------------------------------------------

    def sorted_terms(self, order: Optional[MonomialOrder] = None):
        key = (order or self.ring.order).key
        return sorted(self._terms.items(), key=lambda t: key(t[0]), reverse=True)

    def leading_term(self, order: Optional[MonomialOrder] = None) -> Tuple[Exponent, Fraction]:
        if not self._terms:
            raise PreconditionError("zero polynomial has no leading term")
        key = (order or self.ring.order).key
        e = max(self._terms, key=key)
        return e, self._terms[e]

    def leading_coeff(self, order=None) -> Fraction:
        return self.leading_term(order)[1]

    def monic(self, order=None) -> "Poly":
        if not self._terms:
            return self
        return self * (1 / self.leading_coeff(order))

    def primitive(self, order=None) -> "Poly":
        """Integer-primitive associate with positive leading coefficient."""
        if not self._terms:
            return self
        den = 1
        for c in self._terms.values():
            den = den * c.denominator // gcd(den, c.denominator)
        num = 0
        for c in self._terms.values():
            num = gcd(num, c.numerator * (den // c.denominator))
        scale = Fraction(den, num)
        if self.leading_coeff(order) < 0:
            scale = -scale
        if scale == 1:
            return self
        return self * scale

    # -- calculus and substitution ----------------------------------------

    def diff(self, i: int) -> "Poly":
        out: Terms = {}
        for e, c in self._terms.items():
            k = e[i]
            if k:
                e2 = e[:i] + (k - 1,) + e[i + 1 :]
                out[e2] = c * k
        return Poly(self.ring, out)

    def subs(self, values: Mapping[int, object]) -> "Poly":
        """Substitute rational values for the symbols with the given indices."""
        values = {i: Fraction(v) for i, v in values.items()}
        out: Terms = {}
        for e, c in self._terms.items():
            e2 = list(e)
            for i, v in values.items():
                k = e2[i]
                if k:
                    c = c * v**k
                    e2[i] = 0
            if c:
                t = tuple(e2)
                out[t] = out.get(t, 0) + c
        return Poly(self.ring, {e: c for e, c in out.items() if c})

    def evaluate(self, point: Sequence) -> Fraction:
        total = Fraction(0)
        for e, c in self._terms.items():
            t = c
            for v, k in zip(point, e):
                if k:
                    t *= Fraction(v) ** k
            total += t
        return total

    def coefficients_in(self, i: int) -> Dict[int, "Poly"]:
        """View as a polynomial in symbol ``i``: map degree -> coefficient poly."""
        parts: Dict[int, Terms] = {}
        for e, c in self._terms.items():
            k = e[i]
            parts.setdefault(k, {})[e[:i] + (0,) + e[i + 1 :]] = c
        return {k: Poly(self.ring, t) for k, t in parts.items()}

    def to_ring(self, ring: PolyRing) -> "Poly":
        """Re-home into a ring over the same symbols (e.g. with another default order)."""
        if ring.symbols != self.ring.symbols:
            raise RingMismatchError("cannot move a polynomial between rings with different symbols")
        return Poly(ring, self._terms)

    def __str__(self):
        from .textsyntax import format_poly

        return format_poly(self)

    def __repr__(self):
        return f"Poly({self})"


def poly_add(a: Poly, b: Poly) -> Poly:
    _same_ring(a, b)
    return a + b


def poly_mul(a: Poly, b: Poly) -> Poly:
    _same_ring(a, b)
    return a * b


def _same_ring(a: Poly, b: Poly):
    if a.ring != b.ring:
        raise RingMismatchError(f"ring mismatch: {a.ring} vs {b.ring}")


def _divides(a: Exponent, b: Exponent) -> bool:
    return all(x <= y for x, y in zip(a, b))


def exact_divide(a: Poly, b: Poly) -> Optional[Poly]:
    """Return ``q`` with ``a == q * b``, or ``None`` when ``b`` does not divide ``a``."""
    _same_ring(a, b)
    if b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    if a.is_zero():
        return a
    key = a.ring.order.key
    lb, cb = b.leading_term()
    btail = [(e, c) for e, c in b._terms.items() if e != lb]
    rem = dict(a._terms)
    quot: Terms = {}
    while rem:
        lr = max(rem, key=key)
        if not _divides(lb, lr):
            return None
        m = tuple(x - y for x, y in zip(lr, lb))
        q = rem.pop(lr) / cb
        quot[m] = q
        for e, c in btail:
            e2 = tuple(x + y for x, y in zip(e, m))
            s = rem.get(e2, 0) - q * c
            if s:
                rem[e2] = s
            else:
                rem.pop(e2, None)
    return Poly(a.ring, quot)


def divides(b: Poly, a: Poly) -> bool:
    return exact_divide(a, b) is not None


@lru_cache(maxsize=None)
def _zz_ring(n: int):
    from sympy import ZZ
    from sympy.polys.rings import ring

    return ring(",".join(f"x{i}" for i in range(n)) or "x0", ZZ)[0]


def _gcd_primitive(a: Poly, b: Poly) -> Poly:
    # a, b nonzero and integer-primitive; the gcd itself runs in sympy's sparse ZZ ring
    n = a.ring.ngens
    R = _zz_ring(n)
    if n == 0:
        return a.ring.one()
    pa = R.from_dict({e: int(c) for e, c in a._terms.items()})
    pb = R.from_dict({e: int(c) for e, c in b._terms.items()})
    g = pa.gcd(pb)
    return Poly(a.ring, {tuple(e): Fraction(int(c)) for e, c in g.items()})


def multivariate_gcd(a: Poly, b: Poly) -> Poly:
    """Greatest common divisor, normalized to leading coefficient 1."""
    _same_ring(a, b)
    if a.is_zero() and b.is_zero():
        raise PreconditionError("gcd(0, 0) is undefined")
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    return _gcd_primitive(a.primitive(), b.primitive()).monic()


def poly_lcm(a: Poly, b: Poly) -> Poly:
    if a.is_zero() or b.is_zero():
        return a.ring.zero()
    return exact_divide(a * b, multivariate_gcd(a, b)).monic()


def product(polys: Iterable[Poly], ring: PolyRing) -> Poly:
    out = ring.one()
    for p in polys:
        out = out * p
    return out


def associates(a: Poly, b: Poly) -> bool:
    """True when ``a`` and ``b`` differ by a nonzero rational factor."""
    if a.is_zero() or b.is_zero():
        return a.is_zero() and b.is_zero()
    return a.monic() == b.monic()

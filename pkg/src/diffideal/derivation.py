"""Derivations on Q[variables, parameters] and their extension to quotients."""

from __future__ import annotations

from typing import Dict, Mapping, Optional, Sequence, Tuple, Union

from .errors import DomainError, InvalidScalarError, PreconditionError, RationalImageError, RingMismatchError
from .polys import Poly, PolyRing, poly_lcm
from .ratfunc import RationalFunction

Image = Union[Poly, RationalFunction]


class DifferentialRing:
    """Polynomial ring over Q in ``variables`` and ``parameters`` with a derivation.

    ``images`` maps every symbol name to its derivative. Images are stored as
    rational functions; most analyses need polynomial images and call
    :meth:`polynomial_images`, which refuses non-trivial denominators.
    """

    __slots__ = ("variables", "parameters", "poly_ring", "_images")

    def __init__(
        self,
        variables: Sequence[str],
        parameters: Sequence[str] = (),
        images: Optional[Mapping[str, Image]] = None,
        order: str = "grevlex",
        poly_ring: Optional[PolyRing] = None,
    ):
        variables, parameters = tuple(variables), tuple(parameters)
        if poly_ring is None:
            poly_ring = PolyRing(variables + parameters, len(variables), order)
        elif poly_ring.symbols != variables + parameters or poly_ring.nvars != len(variables):
            raise RingMismatchError("poly_ring does not match the declared symbols")
        self.variables = variables
        self.parameters = parameters
        self.poly_ring = poly_ring
        images = dict(images or {})
        unknown = set(images) - set(poly_ring.symbols)
        if unknown:
            raise PreconditionError(f"derivation image given for unknown symbol(s) {sorted(unknown)}")
        stored = []
        for name in poly_ring.symbols:
            if name not in images:
                raise PreconditionError(f"no derivation image for {name}")
            img = images[name]
            if isinstance(img, Poly):
                img = RationalFunction.from_poly(img)
            if img.ring.symbols != poly_ring.symbols:
                raise RingMismatchError(f"image of {name} lives in a different ring")
            if img.ring != poly_ring:
                img = RationalFunction(img.num.to_ring(poly_ring), img.den.to_ring(poly_ring))
            stored.append(img)
        self._images: Tuple[RationalFunction, ...] = tuple(stored)

    @property
    def symbols(self) -> Tuple[str, ...]:
        return self.poly_ring.symbols

    def image(self, name: str) -> RationalFunction:
        return self._images[self.poly_ring.index(name)]

    def images(self) -> Dict[str, RationalFunction]:
        return dict(zip(self.symbols, self._images))

    def has_polynomial_images(self) -> bool:
        return all(img.is_polynomial() for img in self._images)

    def polynomial_images(self) -> Tuple[Poly, ...]:
        bad = [s for s, img in zip(self.symbols, self._images) if not img.is_polynomial()]
        if bad:
            raise RationalImageError(
                f"derivation image of {', '.join(bad)} is not a polynomial; "
                "rescale the derivation by a clearing factor (see clear_denominators)"
            )
        return tuple(img.num for img in self._images)

    def is_trivial(self) -> bool:
        return all(img.is_zero() for img in self._images)

    def with_images(self, images: Mapping[str, Image]) -> "DifferentialRing":
        return DifferentialRing(self.variables, self.parameters, images, poly_ring=self.poly_ring)

    def with_order(self, order: str) -> "DifferentialRing":
        ring = self.poly_ring.with_order(order)
        imgs = {
            s: RationalFunction(i.num.to_ring(ring), i.den.to_ring(ring)) for s, i in self.images().items()
        }
        return DifferentialRing(self.variables, self.parameters, imgs, poly_ring=ring)

    def __eq__(self, other):
        return (
            isinstance(other, DifferentialRing)
            and self.poly_ring == other.poly_ring
            and self._images == other._images
        )

    def __hash__(self):
        return hash((self.poly_ring, self._images))

    def __repr__(self):
        imgs = ", ".join(f"D{s} = {img}" for s, img in zip(self.symbols, self._images))
        return f"DifferentialRing(vars={list(self.variables)}, params={list(self.parameters)}; {imgs})"


def d_poly(ring: DifferentialRing, p: Poly) -> Poly:
    """Apply the derivation to a polynomial: sum over symbols of dp/ds * D(s)."""
    _check(ring, p)
    images = ring.polynomial_images()
    out = ring.poly_ring.zero()
    for i, img in enumerate(images):
        if img.is_zero():
            continue
        part = p.diff(i)
        if not part.is_zero():
            out = out + part * img
    return out


def d_ratfunc(ring: DifferentialRing, r: Union[RationalFunction, Poly]) -> RationalFunction:
    """Quotient rule: D(n/d) = (d*Dn - n*Dd) / d^2, in canonical form.

    Works for rational derivation images as well.
    """
    if isinstance(r, Poly):
        r = RationalFunction.from_poly(r)
    _check(ring, r.num)
    if ring.has_polynomial_images():
        dn = RationalFunction.from_poly(d_poly(ring, r.num))
        if r.den == 1:
            return dn
        dd = RationalFunction.from_poly(d_poly(ring, r.den))
    else:
        dn = _d_general(ring, r.num)
        if r.den == 1:
            return dn
        dd = _d_general(ring, r.den)
    num = dn * r.den - dd * r.num
    return num / RationalFunction.from_poly(r.den * r.den)


def _d_general(ring: DifferentialRing, p: Poly) -> RationalFunction:
    out = RationalFunction.from_poly(ring.poly_ring.zero())
    for i, img in enumerate(ring._images):
        part = p.diff(i)
        if not part.is_zero() and not img.is_zero():
            out = out + img * part
    return out


def is_constant(ring: DifferentialRing, r: Union[RationalFunction, Poly]) -> bool:
    return d_ratfunc(ring, r).is_zero()


def rescale_derivation(ring: DifferentialRing, f: Union[RationalFunction, Poly, int]) -> DifferentialRing:
    """Return the ring with derivation f*D; ``f`` must be a nonzero element of the parameter field."""
    if not isinstance(f, (RationalFunction, Poly)):
        f = ring.poly_ring.const(f)
    if isinstance(f, Poly):
        f = RationalFunction.from_poly(f)
    if f.is_zero():
        raise InvalidScalarError("rescaling factor must be nonzero")
    if f.involves_variables():
        raise DomainError(f"rescaling factor {f} involves main variables; it must lie in the parameter field")
    return ring.with_images({s: f * img for s, img in ring.images().items()})


def clear_denominators(ring: DifferentialRing) -> Tuple[DifferentialRing, Poly]:
    """Rescale D by the lcm of the image denominators so every image is a polynomial.

    Returns the new ring and the clearing factor. The factor must be free of
    main variables, otherwise no rescaling by the parameter field helps.
    """
    pr = ring.poly_ring
    factor = pr.one()
    for img in ring._images:
        if not img.is_polynomial():
            factor = poly_lcm(factor, img.den)
    if factor.involves_variables():
        raise DomainError(
            f"denominators involve main variables (lcm {factor}); they cannot be cleared by a parameter factor"
        )
    if factor == 1:
        return ring, factor
    return rescale_derivation(ring, factor), factor


def _check(ring: DifferentialRing, p: Poly):
    if p.ring != ring.poly_ring:
        raise RingMismatchError("polynomial does not belong to this differential ring")

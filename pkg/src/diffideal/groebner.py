"""Buchberger's algorithm over Q and the ideal operations built on it.

Internally polynomials are dicts of exponent tuple -> int, kept integer
primitive after every reduction; the public surface uses ``Poly`` and returns
reduced, monic bases.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from sympy import divisors

from .derivation import DifferentialRing, clear_denominators, d_poly
from .errors import DimensionError, IterationCapError, PreconditionError, RingMismatchError
from .linalg import nullspace
from .polys import Exponent, MonomialOrder, Poly, PolyRing, associates, exact_divide, multivariate_gcd

IntPoly = Dict[Exponent, int]

DEFAULT_CLOSURE_CAP = 64


@dataclass(frozen=True)
class GroebnerBasis:
    basis: Tuple[Poly, ...]
    order: MonomialOrder

    def is_unit(self) -> bool:
        return len(self.basis) == 1 and self.basis[0].is_ground()

    def is_zero(self) -> bool:
        return not self.basis

    def leading_monomials(self) -> List[Exponent]:
        return [g.leading_term(self.order)[0] for g in self.basis]

    def __iter__(self):
        return iter(self.basis)

    def __len__(self):
        return len(self.basis)


class Ideal:
    """Ideal given by generators in a polynomial or differential ring.

    Zero generators are dropped and associates deduplicated; an empty
    generator list is the zero ideal. Gröbner bases are computed on demand and
    cached per monomial order.
    """

    def __init__(self, generators: Iterable[Poly], ring: Union[DifferentialRing, PolyRing, None] = None):
        gens: List[Poly] = []
        for g in generators:
            if g.is_zero() or any(associates(g, h) for h in gens):
                continue
            gens.append(g)
        if ring is None:
            if not gens:
                raise PreconditionError("cannot infer the ring of an ideal with no nonzero generators")
            ring = gens[0].ring
        self.ring = ring
        self.poly_ring = ring.poly_ring if isinstance(ring, DifferentialRing) else ring
        for g in gens:
            if g.ring != self.poly_ring:
                raise RingMismatchError("ideal generators must share the ambient ring")
        self.generators: Tuple[Poly, ...] = tuple(gens)
        self._gb: Dict[MonomialOrder, GroebnerBasis] = {}
        self._lock = threading.Lock()

    def groebner(self, order: Optional[MonomialOrder] = None) -> GroebnerBasis:
        order = order or self.poly_ring.order
        gb = self._gb.get(order)
        if gb is None:
            gb = buchberger(self, order)
            with self._lock:
                gb = self._gb.setdefault(order, gb)
        return gb

    def is_zero(self) -> bool:
        return not self.generators

    def is_unit(self) -> bool:
        return self.groebner().is_unit()

    def is_proper(self) -> bool:
        return not self.is_unit()

    def contains(self, p: Poly) -> bool:
        return ideal_membership(p, self)

    def __repr__(self):
        return f"Ideal({', '.join(str(g) for g in self.generators) or '0'})"


# -- integer-coefficient kernels ----------------------------------------------


def _to_int(p: Poly) -> IntPoly:
    den = 1
    for c in p._terms.values():
        den = den * c.denominator // gcd(den, c.denominator)
    return _primitive({e: int(c * den) for e, c in p._terms.items()})


def _primitive(p: IntPoly) -> IntPoly:
    g = 0
    for c in p.values():
        g = gcd(g, c)
        if g == 1:
            return p
    if g in (0, 1):
        return p
    return {e: c // g for e, c in p.items()}


def _lcm_exp(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x if x > y else y for x, y in zip(a, b))


def _divides(a: Exponent, b: Exponent) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _spoly(f: IntPoly, lf: Exponent, g: IntPoly, lg: Exponent) -> IntPoly:
    lcm = _lcm_exp(lf, lg)
    a, b = f[lf], g[lg]
    d = gcd(a, b)
    ca, cb = b // d, a // d
    sf = tuple(x - y for x, y in zip(lcm, lf))
    sg = tuple(x - y for x, y in zip(lcm, lg))
    out: IntPoly = {}
    for e, c in f.items():
        out[tuple(x + y for x, y in zip(e, sf))] = c * ca
    for e, c in g.items():
        e2 = tuple(x + y for x, y in zip(e, sg))
        s = out.get(e2, 0) - c * cb
        if s:
            out[e2] = s
        else:
            out.pop(e2, None)
    return out


def _reduce(p: IntPoly, basis: Sequence[IntPoly], lms: Sequence[Exponent], key) -> IntPoly:
    """Fully reduce ``p`` modulo ``basis``; result is defined up to a positive integer factor."""
    p = dict(p)
    rem: IntPoly = {}
    while p:
        m = max(p, key=key)
        c = p[m]
        for g, lg in zip(basis, lms):
            if _divides(lg, m):
                break
        else:
            rem[m] = p.pop(m)
            continue
        a = g[lg]
        d = gcd(a, c)
        fa, fc = a // d, c // d
        if fa < 0:
            fa, fc = -fa, -fc
        if fa != 1:
            p = {e: v * fa for e, v in p.items()}
            rem = {e: v * fa for e, v in rem.items()}
        shift = tuple(x - y for x, y in zip(m, lg))
        for e, v in g.items():
            e2 = tuple(x + y for x, y in zip(e, shift))
            s = p.get(e2, 0) - v * fc
            if s:
                p[e2] = s
            else:
                p.pop(e2, None)
        if len(rem) + len(p) > 8:
            # keep coefficients from growing without bound
            g2 = 0
            for v in rem.values():
                g2 = gcd(g2, v)
            for v in p.values():
                g2 = gcd(g2, v)
                if g2 == 1:
                    break
            if g2 > 1:
                p = {e: v // g2 for e, v in p.items()}
                rem = {e: v // g2 for e, v in rem.items()}
    return _primitive(rem)


def _update(G, LM, pairs, f, lmf, key):
    """Gebauer-Möller installation of a new basis element."""
    new = len(G)
    kept = set()
    for (i, j) in pairs:
        lij = _lcm_exp(LM[i], LM[j])
        if (
            not _divides(lmf, lij)
            or lij == _lcm_exp(LM[i], lmf)
            or lij == _lcm_exp(LM[j], lmf)
        ):
            kept.add((i, j))
    by_lcm: Dict[Exponent, List[int]] = {}
    for i in range(new):
        by_lcm.setdefault(_lcm_exp(LM[i], lmf), []).append(i)
    minimal: List[Exponent] = []
    for L in sorted(by_lcm, key=key):
        if not any(_divides(M, L) for M in minimal):
            minimal.append(L)
    for L in minimal:
        coprime = any(
            all(a == 0 or b == 0 for a, b in zip(LM[i], lmf)) for i in by_lcm[L]
        )
        if not coprime:
            kept.add((min(by_lcm[L]), new))
    G.append(f)
    LM.append(lmf)
    return kept


def _groebner_int(F: Sequence[IntPoly], key) -> List[IntPoly]:
    G: List[IntPoly] = []
    LM: List[Exponent] = []
    pairs: set = set()
    for f in sorted(F, key=lambda f: key(max(f, key=key))):
        h = _reduce(f, G, LM, key)
        if h:
            pairs = _update(G, LM, pairs, h, max(h, key=key), key)
    while pairs:
        # normal strategy: smallest lcm first, ties broken deterministically
        i, j = min(
            pairs,
            key=lambda p: (key(_lcm_exp(LM[p[0]], LM[p[1]])), p[1], p[0]),
        )
        pairs.discard((i, j))
        s = _spoly(G[i], LM[i], G[j], LM[j])
        h = _reduce(s, G, LM, key)
        if h:
            if all(v == 0 for v in max(h, key=key)):
                return [{max(h, key=key): 1}]
            pairs = _update(G, LM, pairs, h, max(h, key=key), key)
    # minimalize, then interreduce
    order = sorted(range(len(G)), key=lambda i: key(LM[i]))
    keep: List[int] = []
    for i in order:
        if not any(_divides(LM[k], LM[i]) for k in keep):
            keep.append(i)
    Gm = [G[i] for i in keep]
    Lm = [LM[i] for i in keep]
    out = []
    for idx, g in enumerate(Gm):
        others = Gm[:idx] + Gm[idx + 1 :]
        olms = Lm[:idx] + Lm[idx + 1 :]
        lead = {Lm[idx]: g[Lm[idx]]}
        tail = {e: c for e, c in g.items() if e != Lm[idx]}
        # leading terms of a minimal basis are already irreducible; reduce the tail only
        red_tail = _reduce_tail(lead, tail, others, olms, key)
        out.append(red_tail)
    return out


def _reduce_tail(lead, tail, basis, lms, key):
    (lm, lc), = lead.items()
    if not tail:
        return {lm: 1}
    rt = _reduce_keep_scale(tail, basis, lms, key)
    scale, r = rt
    full = {lm: lc * scale}
    full.update(r)
    return _primitive(full)


def _reduce_keep_scale(p: IntPoly, basis, lms, key):
    """Like ``_reduce`` but report the accumulated integer scale so the caller can rescale other parts."""
    p = dict(p)
    rem: IntPoly = {}
    scale = 1
    while p:
        m = max(p, key=key)
        c = p[m]
        for g, lg in zip(basis, lms):
            if _divides(lg, m):
                break
        else:
            rem[m] = p.pop(m)
            continue
        a = g[lg]
        d = gcd(a, c)
        fa, fc = a // d, c // d
        if fa < 0:
            fa, fc = -fa, -fc
        if fa != 1:
            p = {e: v * fa for e, v in p.items()}
            rem = {e: v * fa for e, v in rem.items()}
            scale *= fa
        shift = tuple(x - y for x, y in zip(m, lg))
        for e, v in g.items():
            e2 = tuple(x + y for x, y in zip(e, shift))
            s = p.get(e2, 0) - v * fc
            if s:
                p[e2] = s
            else:
                p.pop(e2, None)
    return scale, rem


def _from_int(ring: PolyRing, p: IntPoly, order: MonomialOrder) -> Poly:
    lm = max(p, key=order.key)
    lc = p[lm]
    return Poly(ring, {e: Fraction(c, lc) for e, c in p.items()})


# -- public operations -----------------------------------------------------------


def _order_for(ring: PolyRing, order) -> MonomialOrder:
    if order is None:
        return ring.order
    if isinstance(order, str):
        return MonomialOrder(order, nsyms=ring.ngens)
    if len(order.perm) != ring.ngens:
        raise PreconditionError("monomial order does not match the number of ring symbols")
    return order


def buchberger(ideal: Union[Ideal, Sequence[Poly]], order=None) -> GroebnerBasis:
    """Reduced Gröbner basis of the ideal for ``order`` (defaults to the ring's order)."""
    if not isinstance(ideal, Ideal):
        ideal = Ideal(ideal)
    ring = ideal.poly_ring
    order = _order_for(ring, order)
    if not ideal.generators:
        return GroebnerBasis((), order)
    key = order.key
    G = _groebner_int([_to_int(g) for g in ideal.generators], key)
    basis = sorted((_from_int(ring, g, order) for g in G), key=lambda p: key(p.leading_term(order)[0]), reverse=True)
    return GroebnerBasis(tuple(basis), order)


def normal_form(p: Poly, G: GroebnerBasis) -> Poly:
    """Remainder of ``p`` on division by the (monic) basis ``G``."""
    if not G.basis:
        return p
    ring = p.ring
    if ring != G.basis[0].ring:
        raise RingMismatchError("polynomial and basis live in different rings")
    key = G.order.key
    lms = G.leading_monomials()
    basis = [g._terms for g in G.basis]
    rem: Dict[Exponent, Fraction] = {}
    work = dict(p._terms)
    while work:
        m = max(work, key=key)
        c = work[m]
        for g, lg in zip(basis, lms):
            if _divides(lg, m):
                break
        else:
            rem[m] = work.pop(m)
            continue
        shift = tuple(x - y for x, y in zip(m, lg))
        for e, v in g.items():
            e2 = tuple(x + y for x, y in zip(e, shift))
            s = work.get(e2, 0) - v * c
            if s:
                work[e2] = s
            else:
                work.pop(e2, None)
    return Poly(ring, rem)


def ideal_membership(p: Poly, ideal: Ideal) -> bool:
    if p.is_zero():
        return True
    if ideal.is_zero():
        return False
    return normal_form(p, ideal.groebner()).is_zero()


def _differential_ring(ideal: Ideal, ring: Optional[DifferentialRing]) -> DifferentialRing:
    ring = ring or ideal.ring
    if not isinstance(ring, DifferentialRing):
        raise PreconditionError("ideal carries no derivation; pass a DifferentialRing")
    if ring.poly_ring != ideal.poly_ring:
        raise RingMismatchError("ideal and derivation live in different rings")
    if not ring.has_polynomial_images():
        # f*D with f from the parameter field: same differential ideals after clearing
        ring, _ = clear_denominators(ring)
    return ring


def is_differential_ideal(ideal: Ideal, ring: Optional[DifferentialRing] = None) -> bool:
    """True iff D(g) lies in the ideal for every generator g (enough by the Leibniz rule)."""
    ring = _differential_ring(ideal, ring)
    if ideal.is_zero():
        return True
    G = ideal.groebner()
    if G.is_unit():
        return True
    return all(normal_form(d_poly(ring, g), G).is_zero() for g in ideal.generators)


def differential_closure(
    ideal: Ideal, ring: Optional[DifferentialRing] = None, cap: int = DEFAULT_CLOSURE_CAP
) -> Ideal:
    """Smallest differential ideal containing ``ideal``.

    Adds reduced derivatives of the newest generators until nothing new
    appears; exceeding ``cap`` rounds raises ``IterationCapError``.
    """
    ring = _differential_ring(ideal, ring)
    gens = list(ideal.generators)
    frontier = list(gens)
    for _ in range(cap):
        current = Ideal(gens, ring)
        G = current.groebner()
        if G.is_unit():
            return current
        fresh = []
        for g in frontier:
            h = normal_form(d_poly(ring, g), G)
            if not h.is_zero():
                h = h.primitive()
                if not any(associates(h, x) for x in fresh):
                    fresh.append(h)
        if not fresh:
            return current
        gens.extend(fresh)
        frontier = fresh
    raise IterationCapError(f"differential closure did not stabilize within {cap} rounds")


def elimination_order(ring: PolyRing, keep: Iterable[Union[str, int]]) -> MonomialOrder:
    keep_idx = sorted(k if isinstance(k, int) else ring.index(k) for k in keep)
    drop = [i for i in range(ring.ngens) if i not in keep_idx]
    return MonomialOrder("lex", drop + keep_idx)


def elimination_ideal(ideal: Ideal, keep: Iterable[Union[str, int]]) -> Ideal:
    """Generators of the intersection of ``ideal`` with the subring in the kept symbols."""
    ring = ideal.poly_ring
    keep_idx = {k if isinstance(k, int) else ring.index(k) for k in keep}
    G = ideal.groebner(elimination_order(ring, keep_idx))
    gens = [g for g in G.basis if g.support() <= keep_idx]
    return Ideal(gens, ideal.ring)


# -- zero-dimensional solving -----------------------------------------------------


@dataclass(frozen=True)
class RationalSolutions:
    symbols: Tuple[str, ...]
    points: Tuple[Tuple[Fraction, ...], ...]
    nonrational_count: int

    def as_dicts(self):
        return [dict(zip(self.symbols, p)) for p in self.points]


def is_zero_dimensional(G: GroebnerBasis, nsyms: int) -> bool:
    if G.is_unit():
        return True
    lms = G.leading_monomials()
    for i in range(nsyms):
        if not any(m[i] > 0 and sum(m) == m[i] for m in lms):
            return False
    return True


def standard_monomials(G: GroebnerBasis, nsyms: int) -> List[Exponent]:
    """Monomials outside the leading-term ideal; requires a zero-dimensional basis."""
    if G.is_unit():
        return []
    if not is_zero_dimensional(G, nsyms):
        raise DimensionError("infinitely many standard monomials: ideal is not zero-dimensional")
    lms = G.leading_monomials()
    seen = set()
    stack = [(0,) * nsyms]
    while stack:
        m = stack.pop()
        if m in seen or any(_divides(l, m) for l in lms):
            continue
        seen.add(m)
        for i in range(nsyms):
            stack.append(m[:i] + (m[i] + 1,) + m[i + 1 :])
    return sorted(seen, key=G.order.key)


def maximal_independent_set(G: GroebnerBasis, nsyms: int) -> List[int]:
    """Greedy maximal set of symbol indices no leading monomial is supported in."""
    lms = G.leading_monomials()
    chosen: List[int] = []
    for i in reversed(range(nsyms)):
        trial = set(chosen) | {i}
        if not any(all(m[k] == 0 or k in trial for k in range(nsyms)) for m in lms):
            chosen.append(i)
    return sorted(chosen)


def rational_roots(p: Poly, i: int) -> List[Fraction]:
    """Rational roots of a polynomial in the single symbol ``i``."""
    if p.is_zero():
        raise PreconditionError("the zero polynomial has every root")
    coeffs = [Fraction(0)] * (p.degree_in(i) + 1)
    for e, c in p.items():
        coeffs[e[i]] = c
    den = 1
    for c in coeffs:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    roots = []
    low = 0
    while ints[low] == 0:
        low += 1
    if low:
        roots.append(Fraction(0))
    ints = ints[low:]
    n = len(ints) - 1
    if n == 0:
        return roots
    a0, an = abs(ints[0]), abs(ints[-1])
    bound = 1 + max(Fraction(abs(c), an) for c in ints[:-1])
    for q in divisors(an):
        for pnum in divisors(a0):
            if Fraction(pnum, q) > bound:
                continue
            if gcd(pnum, q) != 1:
                continue
            for x in (pnum, -pnum):
                # x/q is a root iff sum a_k x^k q^(n-k) == 0
                acc = 0
                for k in range(n, -1, -1):
                    acc = acc * x + ints[k] * q ** (n - k)
                if acc == 0:
                    roots.append(Fraction(x, q))
    return sorted(set(roots))


def _solve_rec(polys: List[Poly], k: int, ring: PolyRing, lex: MonomialOrder, assigned: Dict[int, Fraction], out):
    basis = list(buchberger(polys, lex).basis) if polys else []
    if basis and basis[0].is_ground():
        return
    if k < 0:
        out.append(tuple(assigned[i] for i in range(ring.ngens)))
        return
    uni = [g for g in basis if g.support() <= {k}]
    if not uni:
        raise DimensionError(f"no univariate eliminant in {ring.symbols[k]}; ideal is not zero-dimensional")
    for r in rational_roots(uni[-1], k):
        sub = [g.subs({k: r}) for g in basis]
        _solve_rec([g for g in sub if not g.is_zero()], k - 1, ring, lex, {**assigned, k: r}, out)


def _minimal_polynomial(G: GroebnerBasis, i: int, ring: PolyRing) -> Poly:
    """Minimal polynomial of symbol ``i`` in Q[x]/I via normal forms of its powers."""
    x = ring.gen(i)
    vectors = []
    cols: Dict[Exponent, int] = {}
    power = ring.one()
    while True:
        nf = normal_form(power, G)
        for e in nf._terms:
            cols.setdefault(e, len(cols))
        vectors.append(nf)
        # columns = powers, rows = monomials
        rows = [[v.coeff(e) for v in vectors] for e in cols]
        kern = nullspace(rows, len(vectors))
        if kern:
            coeffs = kern[0]
            out = ring.zero()
            for j, c in enumerate(coeffs):
                if c:
                    out = out + ring.monomial(tuple(j if t == i else 0 for t in range(ring.ngens)), c)
            return out.monic()
        power = power * x


def solve_zero_dim_rational(ideal: Ideal) -> RationalSolutions:
    """All solutions with rational coordinates of a zero-dimensional ideal.

    Solutions outside Q^n are counted, not returned. Raises ``DimensionError``
    if the ideal has infinitely many solutions over the algebraic closure.
    """
    ring = ideal.poly_ring
    n = ring.ngens
    lex = MonomialOrder("lex", nsyms=n)
    if ideal.is_zero():
        if n == 0:
            return RationalSolutions(ring.symbols, ((),), 0)
        raise DimensionError("the zero ideal is not zero-dimensional")
    G = ideal.groebner(lex)
    if G.is_unit():
        return RationalSolutions(ring.symbols, (), 0)
    if not is_zero_dimensional(G, n):
        raise DimensionError("ideal is not zero-dimensional (some symbol has no pure-power leading term)")
    points: List[Tuple[Fraction, ...]] = []
    _solve_rec(list(G.basis), n - 1, ring, lex, {}, points)
    points = sorted(set(points))
    # number of distinct solutions over the algebraic closure: standard monomials of the radical
    extra = []
    for i in range(n):
        m = _minimal_polynomial(G, i, ring)
        dm = m.diff(i)
        extra.append(exact_divide(m, multivariate_gcd(m, dm)) if not dm.is_zero() else m)
    radical = Ideal(list(G.basis) + extra, ring)
    distinct = len(standard_monomials(radical.groebner(MonomialOrder("grevlex", nsyms=n)), n))
    return RationalSolutions(ring.symbols, tuple(points), distinct - len(points))

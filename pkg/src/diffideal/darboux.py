"""Darboux polynomials: nonzero w with D(w) = z*w for a polynomial cofactor z.

In a polynomial ring the principal prime differential ideals (w) with
nonzero cofactor are exactly the height-one differential primes not
generated by constants, so a bounded-degree Darboux search enumerates them.
The search writes w and z with undetermined coefficients, reads
D(w) - z*w = 0 coefficientwise, and solves the resulting bilinear system one
normalization slice at a time.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .derivation import DifferentialRing, d_poly
from .errors import DimensionError, PreconditionError
from .groebner import Ideal, maximal_independent_set, solve_zero_dim_rational
from .linalg import rank
from .polys import Exponent, MonomialOrder, Poly, PolyRing, exact_divide

COMPLETE = "complete-for-rational-coefficients"
REPRESENTATIVES = "representatives-only"


@dataclass(frozen=True)
class DarbouxPair:
    w: Poly
    z: Poly

    def __iter__(self):
        return iter((self.w, self.z))


@dataclass(frozen=True)
class CofactorSpace:
    degree_bound: int
    basis: Tuple[Exponent, ...]


@dataclass(frozen=True)
class SearchConfig:
    max_deg: int = 2
    include_constant_cofactor_zero: bool = False

    def __post_init__(self):
        if not isinstance(self.max_deg, int) or self.max_deg < 1:
            raise PreconditionError(f"max_deg must be an integer >= 1, got {self.max_deg!r}")


@dataclass(frozen=True)
class SliceReport:
    leading: Exponent
    zero_dimensional: bool
    solutions: int
    nonrational: int


@dataclass(frozen=True)
class DarbouxResult:
    pairs: Tuple[DarbouxPair, ...]
    completeness: str
    slices: Tuple[SliceReport, ...] = field(default=(), repr=False)
    trivial_derivation: bool = False

    @property
    def positive_dimensional(self) -> bool:
        return any(not s.zero_dimensional for s in self.slices) or self.trivial_derivation

    def __iter__(self):
        return iter(self.pairs)

    def __len__(self):
        return len(self.pairs)


def cofactor_degree_bound(ring: DifferentialRing) -> int:
    """Largest total degree among the derivation images (0 for the trivial derivation)."""
    return max((img.total_degree() for img in ring.polynomial_images() if not img.is_zero()), default=0)


def cofactor_space(ring: DifferentialRing) -> CofactorSpace:
    m = cofactor_degree_bound(ring)
    basis = ring.poly_ring.monomials_up_to(max(0, m - 1))
    return CofactorSpace(m, tuple(basis))


def verify_darboux(ring: DifferentialRing, w: Poly) -> Optional[Poly]:
    """Cofactor z with D(w) = z*w, or None when w is not a Darboux polynomial."""
    if w.is_zero():
        raise PreconditionError("the zero polynomial is not a Darboux candidate")
    return exact_divide(d_poly(ring, w), w)


def darboux_search(ring: DifferentialRing, cfg: SearchConfig = SearchConfig()) -> DarbouxResult:
    """All Darboux polynomials of degree <= cfg.max_deg with rational coefficients.

    Results are normalized to integer-primitive w with positive leading
    coefficient; multiples of lower-degree results and members of a linear
    family already represented are dropped. The completeness flag is
    ``COMPLETE`` only if every slice had finitely many solutions.
    """
    pr = ring.poly_ring
    ring.polynomial_images()
    if ring.is_trivial():
        pairs = ()
        if cfg.include_constant_cofactor_zero:
            pairs = tuple(DarbouxPair(pr.gen(i), pr.zero()) for i in range(pr.nvars))
        return DarbouxResult(pairs, REPRESENTATIVES, (), trivial_derivation=True)

    space = cofactor_space(ring)
    monos = pr.monomials_up_to(cfg.max_deg)
    dmono = {m: d_poly(ring, pr.monomial(m)) for m in monos}

    found: Dict[Poly, Poly] = {}
    slices: List[SliceReport] = []
    for idx, lead in enumerate(monos):
        if not any(lead):
            continue
        lower = monos[idx + 1 :]
        points, zero_dim, nonrational = _solve_slice(lead, lower, space.basis, dmono, pr)
        slices.append(SliceReport(lead, zero_dim, len(points), nonrational))
        for a_vals, b_vals in points:
            w = pr.monomial(lead) + pr.from_dict({m: a for m, a in zip(lower, a_vals) if a})
            z = pr.from_dict({k: b for k, b in zip(space.basis, b_vals) if b})
            if d_poly(ring, w) != z * w:
                raise AssertionError(f"slice solver returned a non-Darboux pair ({w}, {z})")
            if not w.involves_variables():
                continue
            if z.is_zero() and not cfg.include_constant_cofactor_zero:
                continue
            found.setdefault(w.primitive(), z)

    completeness = COMPLETE if all(s.zero_dimensional for s in slices) else REPRESENTATIVES
    pairs = _filter_redundant([DarbouxPair(w, z) for w, z in found.items()], pr)
    return DarbouxResult(tuple(pairs), completeness, tuple(slices))


def height_one_differential_primes(ring: DifferentialRing, cfg: SearchConfig = SearchConfig()) -> DarbouxResult:
    """Darboux generators with nonzero cofactor: the principal height-one differential primes found.

    Irreducibility is approximated by dropping anything divisible by a
    lower-degree result, so a w irreducible over Q but split over its
    algebraic closure is still reported.
    """
    res = darboux_search(ring, SearchConfig(cfg.max_deg, False))
    pairs = tuple(p for p in res.pairs if not p.z.is_zero() and p.w.degree_in_variables() > 0)
    return DarbouxResult(pairs, res.completeness, res.slices, res.trivial_derivation)


# -- slice solving ----------------------------------------------------------------


def _slice_system(lead, lower, cof_basis, dmono, pr: PolyRing):
    na, nb = len(lower), len(cof_basis)
    names = [f"a{i}" for i in range(na)] + [f"b{k}" for k in range(nb)]
    unk = PolyRing(names, order="lex")
    n = na + nb

    def unit(*idx):
        e = [0] * n
        for i in idx:
            e[i] += 1
        return tuple(e)

    const = (0,) * n
    eqs: Dict[Exponent, Dict[Exponent, Fraction]] = {}

    def add(mu, ue, c):
        row = eqs.setdefault(mu, {})
        row[ue] = row.get(ue, 0) + c

    for mu, c in dmono[lead].items():
        add(mu, const, c)
    for j, mj in enumerate(lower):
        for mu, c in dmono[mj].items():
            add(mu, unit(j), c)
    for k, kexp in enumerate(cof_basis):
        add(tuple(x + y for x, y in zip(kexp, lead)), unit(na + k), -1)
        for j, mj in enumerate(lower):
            add(tuple(x + y for x, y in zip(kexp, mj)), unit(na + k, j), -1)
    polys = [unk.from_dict(row) for row in eqs.values()]
    return unk, [p for p in polys if not p.is_zero()]


def _solve_slice(lead, lower, cof_basis, dmono, pr):
    unk, polys = _slice_system(lead, lower, cof_basis, dmono, pr)
    points, zero_dim, nonrational = _solve_or_corner(polys, unk)
    na = len(lower)
    return [(p[:na], p[na:]) for p in points], zero_dim, nonrational


def _solve_or_corner(polys, unk: PolyRing):
    """Rational solutions; on a positive-dimensional set, corner representatives instead.

    Corners fix a maximal independent set of unknowns to 0, then each of them
    to 1 in turn, and recurse on what is left.
    """
    ideal = Ideal(polys, unk) if polys else Ideal([], unk)
    try:
        sols = solve_zero_dim_rational(ideal)
        return list(sols.points), True, sols.nonrational_count
    except DimensionError:
        pass
    lex = MonomialOrder("lex", nsyms=unk.ngens)
    G = ideal.groebner(lex) if polys else None
    if G is not None and G.is_unit():
        return [], True, 0
    free = maximal_independent_set(G, unk.ngens) if G is not None else list(range(unk.ngens))
    assignments = [{f: 0 for f in free}]
    for f in free:
        assignments.append({g: (1 if g == f else 0) for g in free})
    points = set()
    for asg in assignments:
        fixed = [unk.gen(i) - v for i, v in asg.items()]
        sub_points, _, _ = _solve_or_corner(list(polys) + fixed, unk)
        points.update(sub_points)
    return sorted(points), False, 0


# -- normalization and filtering ------------------------------------------------------


def _position_key(pr: PolyRing):
    key = pr.order.key

    def k(p: DarbouxPair):
        terms = [key(e) for e, _ in p.w.sorted_terms()]
        return p.w.total_degree(), len(p.w), _Desc(terms)

    return k


class _Desc:
    # sorts term-key lists so that larger monomials come first
    __slots__ = ("v",)

    def __init__(self, v):
        self.v = v

    def __lt__(self, other):
        return self.v > other.v

    def __eq__(self, other):
        return self.v == other.v


def _filter_redundant(pairs: List[DarbouxPair], pr: PolyRing) -> List[DarbouxPair]:
    pairs = sorted(pairs, key=_position_key(pr))
    kept: List[DarbouxPair] = []
    for p in pairs:
        deg = p.w.total_degree()
        if any(q.w.total_degree() < deg and exact_divide(p.w, q.w) is not None for q in kept):
            continue
        same = [q.w for q in kept if q.z == p.z and q.w.total_degree() == deg]
        if same and _in_span(p.w, same):
            continue
        kept.append(p)
    return sort_pairs(kept, pr)


def _in_span(w: Poly, others: Sequence[Poly]) -> bool:
    monos = sorted({e for q in list(others) + [w] for e in q._terms})
    rows = [[q.coeff(e) for e in monos] for q in others]
    return rank(rows + [[w.coeff(e) for e in monos]]) == rank(rows)


def sort_pairs(pairs: Sequence[DarbouxPair], pr: PolyRing) -> List[DarbouxPair]:
    """Deterministic output order: by degree, then by the monomial order of w."""
    key = pr.order.key

    def k(p):
        return p.w.total_degree(), _Desc([key(e) for e, _ in p.w.sorted_terms()])

    return sorted(pairs, key=k)

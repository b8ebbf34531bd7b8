"""Rational constants from Darboux data, constant-induced ideal families, localization witnesses."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .darboux import (
    COMPLETE,
    DarbouxPair,
    SearchConfig,
    cofactor_space,
    height_one_differential_primes,
)
from .derivation import DifferentialRing, d_poly, d_ratfunc, is_constant
from .errors import PreconditionError
from .groebner import Ideal, ideal_membership, is_differential_ideal
from .linalg import nullspace, primitive_integer_vector
from .polys import Exponent, Poly, associates, product
from .ratfunc import RationalFunction

INFINITE_FAMILY = "infinite-family-detected"


@dataclass(frozen=True)
class CofactorMatrix:
    pairs: Tuple[DarbouxPair, ...]
    monomials: Tuple[Exponent, ...]
    rows: Tuple[Tuple[Fraction, ...], ...]

    @classmethod
    def build(cls, ring: DifferentialRing, pairs: Sequence[DarbouxPair]) -> "CofactorMatrix":
        basis = set(cofactor_space(ring).basis)
        for p in pairs:
            basis.update(e for e, _ in p.z.items())
        monos = tuple(ring.poly_ring.monomials_up_to(max((sum(e) for e in basis), default=0)))
        monos = tuple(m for m in monos if m in basis)
        rows = tuple(tuple(p.z.coeff(m) for p in pairs) for m in monos)
        return cls(tuple(pairs), monos, rows)

    def column(self, j: int, ring) -> Poly:
        return ring.poly_ring.from_dict({m: row[j] for m, row in zip(self.monomials, self.rows)})


@dataclass(frozen=True)
class IntegerDependence:
    coefficients: Tuple[int, ...]


@dataclass(frozen=True)
class CandidateConstant:
    value: RationalFunction
    dependence: IntegerDependence


@dataclass(frozen=True)
class ConstantReport:
    constants: Tuple[CandidateConstant, ...]
    primes: Tuple[DarbouxPair, ...]
    completeness: str
    verdict: str
    max_deg: int
    trivial_derivation: bool = False


@dataclass(frozen=True)
class FamilyMember:
    c: Fraction
    generator: Poly
    proper: bool
    differential: bool
    distinct: bool


@dataclass(frozen=True)
class ConstantFamilyReport:
    constant: RationalFunction
    members: Tuple[FamilyMember, ...]

    @property
    def sampled_c(self) -> Tuple[Fraction, ...]:
        return tuple(m.c for m in self.members)

    def ideals(self, ring=None) -> List[Ideal]:
        return [Ideal([m.generator], ring or m.generator.ring) for m in self.members]

    def all_ok(self) -> bool:
        return all(m.proper and m.differential and m.distinct for m in self.members)


@dataclass(frozen=True)
class LocalizationWitness:
    witness: Poly
    t: Poly
    primes: Tuple[DarbouxPair, ...]
    coverage: Tuple[bool, ...]
    heuristic: bool


def power_product(pairs: Sequence[DarbouxPair], exponents: Sequence[int], ring: DifferentialRing) -> RationalFunction:
    pr = ring.poly_ring
    num = product((p.w ** n for p, n in zip(pairs, exponents) if n > 0), pr)
    den = product((p.w ** -n for p, n in zip(pairs, exponents) if n < 0), pr)
    return RationalFunction(num, den)


def integer_dependences(matrix: CofactorMatrix) -> List[IntegerDependence]:
    """Primitive integer basis vectors of the kernel of the cofactor matrix."""
    ncols = len(matrix.pairs)
    if ncols == 0:
        return []
    kernel = nullspace([list(r) for r in matrix.rows], ncols)
    return [IntegerDependence(tuple(primitive_integer_vector(v))) for v in kernel]


def lattice_constants(ring: DifferentialRing, pairs: Sequence[DarbouxPair]) -> List[CandidateConstant]:
    """Constants prod(w_i^n_i) for integer relations sum(n_i z_i) = 0 among the given cofactors."""
    pairs = [p for p in pairs if not p.z.is_zero()]
    matrix = CofactorMatrix.build(ring, pairs)
    out = []
    for dep in integer_dependences(matrix):
        total = ring.poly_ring.zero()
        for p, n in zip(pairs, dep.coefficients):
            total = total + p.z * n
        if not total.is_zero():
            raise AssertionError(f"kernel vector {dep.coefficients} is not a cofactor relation")
        value = power_product(pairs, dep.coefficients, ring)
        if value.is_ground():
            continue
        if not is_constant(ring, value):
            raise AssertionError(f"{value} built from a cofactor relation is not a constant")
        out.append(CandidateConstant(value, dep))
    return out


def first_integral_lattice(ring: DifferentialRing, cfg: SearchConfig = SearchConfig()) -> List[CandidateConstant]:
    primes = height_one_differential_primes(ring, cfg)
    return lattice_constants(ring, primes.pairs)


def new_constant_report(ring: DifferentialRing, cfg: SearchConfig = SearchConfig()) -> ConstantReport:
    """Evidence about new constants up to the degree bound; never a proof of absence."""
    if ring.is_trivial():
        return ConstantReport((), (), "trivial-derivation", "trivial-derivation", cfg.max_deg, True)
    primes = height_one_differential_primes(ring, cfg)
    constants = tuple(lattice_constants(ring, primes.pairs))
    if primes.positive_dimensional:
        verdict = INFINITE_FAMILY
    else:
        verdict = f"finitely-many-up-to-degree-{cfg.max_deg}"
    return ConstantReport(constants, primes.pairs, primes.completeness, verdict, cfg.max_deg)


def constant_family(
    ring: DifferentialRing, f: Poly, g: Poly, cs: Sequence
) -> ConstantFamilyReport:
    """Check the principal ideals (f - c*g) for properness, differentiality and distinctness."""
    if g.is_zero():
        raise PreconditionError("denominator g must be nonzero")
    r = RationalFunction(f, g)
    if not is_constant(ring, r):
        raise PreconditionError(f"{r} is not a constant of the derivation (D = {d_ratfunc(ring, r)})")
    if r.is_ground():
        raise PreconditionError(f"{r} is a rational number; the family (f - c*g) degenerates")
    cs = [Fraction(c) for c in cs]
    if len(set(cs)) != len(cs):
        raise PreconditionError("sample values c must be distinct")
    gens = [(f - g * c) for c in cs]
    members = []
    for i, (c, h) in enumerate(zip(cs, gens)):
        ideal = Ideal([h], ring)
        proper = not h.is_zero() and ideal.is_proper()
        differential = is_differential_ideal(ideal, ring)
        distinct = not any(associates(h, other) for j, other in enumerate(gens) if j != i)
        members.append(FamilyMember(c, h.primitive() if not h.is_zero() else h, proper, differential, distinct))
    return ConstantFamilyReport(r, tuple(members))


def localization_witness(
    ring: DifferentialRing,
    cfg: SearchConfig = SearchConfig(),
    primes: Optional[Sequence[DarbouxPair]] = None,
) -> LocalizationWitness:
    """t*D(X1) with t the product of the height-one Darboux generators.

    Inverting the witness kills every listed prime. When ``primes`` is not
    given it comes from a Darboux search; the witness is labeled heuristic
    unless that search was complete.
    """
    if not ring.variables:
        raise PreconditionError("ring has no main variables")
    pr = ring.poly_ring
    dx1 = d_poly(ring, pr.gen(0))
    if dx1.is_zero():
        raise PreconditionError(f"D({ring.variables[0]}) = 0; the witness needs a nonzero derivative")
    if primes is None:
        res = height_one_differential_primes(ring, cfg)
        primes = res.pairs
        heuristic = res.completeness != COMPLETE
    else:
        primes = tuple(primes)
        heuristic = True
    t = product((p.w for p in primes), pr)
    witness = t * dx1
    coverage = tuple(ideal_membership(witness, Ideal([p.w], ring)) for p in primes)
    return LocalizationWitness(witness, t, tuple(primes), coverage, heuristic)

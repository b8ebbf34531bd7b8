import random
from fractions import Fraction

import pytest

from conftest import P, make_ring
from diffideal import (
    DarbouxPair,
    Ideal,
    SearchConfig,
    constant_family,
    d_ratfunc,
    first_integral_lattice,
    ideal_membership,
    lattice_constants,
    localization_witness,
    new_constant_report,
    parse_ratfunc,
)
from diffideal.errors import PreconditionError


def pair(ring, w, z):
    return DarbouxPair(P(w, ring), P(z, ring))


def test_lattice_recovers_quotient(circle_ring):
    consts = lattice_constants(circle_ring, [pair(circle_ring, "X", "1"), pair(circle_ring, "Y", "1")])
    assert len(consts) == 1
    c = consts[0]
    assert c.dependence.coefficients == (1, -1)
    assert c.value == parse_ratfunc("X/Y", circle_ring.poly_ring)


def test_lattice_with_squared_denominator(circle_ring):
    consts = lattice_constants(circle_ring, [pair(circle_ring, "X^2 + Y^2", "2"), pair(circle_ring, "X", "1")])
    assert [c.dependence.coefficients for c in consts] == [(1, -2)]
    assert consts[0].value == parse_ratfunc("(X^2 + Y^2)/X^2", circle_ring.poly_ring)
    assert d_ratfunc(circle_ring, consts[0].value).is_zero()


def test_independent_cofactors_give_nothing(tan_ring):
    assert lattice_constants(tan_ring, [pair(tan_ring, "X", "1"), pair(tan_ring, "Y^2 + 1", "2*Y")]) == []
    assert first_integral_lattice(tan_ring, SearchConfig(2)) == []


def test_report_on_circle_ring(circle_ring):
    rep = new_constant_report(circle_ring, SearchConfig(1))
    assert rep.verdict == "infinite-family-detected"
    assert parse_ratfunc("X/Y", circle_ring.poly_ring) in [c.value for c in rep.constants]


def test_report_on_tan_ring(tan_ring):
    rep = new_constant_report(tan_ring, SearchConfig(2))
    assert rep.constants == ()
    assert rep.verdict == "finitely-many-up-to-degree-2"
    assert {str(p.w) for p in rep.primes} == {"X", "Y^2 + 1"}


def test_report_on_trivial_derivation(zero_ring):
    rep = new_constant_report(zero_ring)
    assert rep.trivial_derivation and rep.verdict == "trivial-derivation"


def test_family_from_quotient(circle_ring):
    X, Y = circle_ring.poly_ring.gens()
    fam = constant_family(circle_ring, X, Y, [1, 2, 3])
    assert fam.all_ok() and fam.sampled_c == (1, 2, 3)
    for m in fam.members:
        assert str(m.generator) == f"X - {m.c}*Y".replace("1*Y", "Y")
    zero = constant_family(circle_ring, X, Y, [0]).members[0]
    assert zero.generator == X and zero.proper and zero.differential


def test_family_square_member(circle_ring):
    fam = constant_family(circle_ring, P("X^2 + Y^2", circle_ring), P("X*Y", circle_ring), [2])
    m = fam.members[0]
    assert m.generator == P("(X - Y)^2", circle_ring)
    assert m.proper and m.differential


def test_family_preconditions(circle_ring):
    X, Y = circle_ring.poly_ring.gens()
    with pytest.raises(PreconditionError):
        constant_family(circle_ring, X, X + 1, [1])
    with pytest.raises(PreconditionError):
        constant_family(circle_ring, 2 * X, X, [1])
    with pytest.raises(PreconditionError):
        constant_family(circle_ring, X, Y, [1, 1])
    with pytest.raises(PreconditionError):
        constant_family(circle_ring, X, circle_ring.poly_ring.zero(), [1])


def test_family_random_samples_stay_distinct(circle_ring):
    X, Y = circle_ring.poly_ring.gens()
    rng = random.Random(5)
    cs = list({Fraction(rng.randint(-50, 50), rng.randint(1, 9)) for _ in range(15)})
    fam = constant_family(circle_ring, X**2, X * Y, cs)
    assert fam.all_ok()
    for ideal in fam.ideals(circle_ring):
        assert not ideal_membership(circle_ring.poly_ring.one(), ideal)


def test_witness_tan_ring(tan_ring):
    wit = localization_witness(tan_ring, SearchConfig(2))
    assert wit.witness == P("X^2*(Y^2 + 1)", tan_ring)
    assert wit.coverage == (True, True)
    assert not wit.heuristic
    for p in wit.primes:
        assert ideal_membership(wit.witness, Ideal([p.w], tan_ring))


def test_witness_without_darboux_polynomials():
    ring = make_ring({"X": "1", "Y": "X"})
    wit = localization_witness(ring, SearchConfig(1))
    assert wit.witness == 1 and wit.t == 1


def test_witness_needs_nonzero_derivative(zero_ring):
    with pytest.raises(PreconditionError):
        localization_witness(zero_ring)

from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from diffideal import DifferentialRing, PolyRing, parse_poly


def make_ring(images, variables=("X", "Y"), params=(), order="grevlex") -> DifferentialRing:
    pr = PolyRing(list(variables) + list(params), len(variables), order)
    return DifferentialRing(list(variables), list(params), {k: parse_poly(v, pr) for k, v in images.items()}, poly_ring=pr)


def P(text, ring):
    pr = ring.poly_ring if isinstance(ring, DifferentialRing) else ring
    return parse_poly(text, pr)


@pytest.fixture
def circle_ring():
    return make_ring({"X": "X", "Y": "Y"})


@pytest.fixture
def tan_ring():
    return make_ring({"X": "X", "Y": "1 + Y^2"})


@pytest.fixture
def alpha_ring():
    return make_ring({"X": "X^3 - 2*X^2 + 2*X", "a": "a^3 - 2*a^2 + 2*a"}, variables=("X",), params=("a",))


@pytest.fixture
def zero_ring():
    return make_ring({"X": "0", "Y": "0"})


def poly_strategy(ring: PolyRing, max_deg=4, bound=10, max_terms=6):
    exps = ring.monomials_up_to(max_deg)
    coeff = st.integers(-bound, bound).filter(bool)
    return st.dictionaries(st.sampled_from(exps), coeff, max_size=max_terms).map(ring.from_dict)


def rational_poly_strategy(ring: PolyRing, max_deg=3, max_terms=5):
    exps = ring.monomials_up_to(max_deg)
    coeff = st.fractions(min_value=-5, max_value=5, max_denominator=4).filter(bool)
    return st.dictionaries(st.sampled_from(exps), coeff, max_size=max_terms).map(ring.from_dict)


def random_poly(rng: random.Random, ring: PolyRing, max_deg=4, bound=10, max_terms=6, nonzero=False):
    exps = ring.monomials_up_to(max_deg)
    while True:
        n = rng.randint(1 if nonzero else 0, max_terms)
        terms = {rng.choice(exps): Fraction(rng.randint(-bound, bound)) for _ in range(n)}
        p = ring.from_dict(terms)
        if not nonzero or not p.is_zero():
            return p


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])

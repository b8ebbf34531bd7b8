import pytest

from conftest import P, make_ring
from diffideal import (
    COMPLETE,
    REPRESENTATIVES,
    SearchConfig,
    cofactor_degree_bound,
    cofactor_space,
    darboux_search,
    d_poly,
    height_one_differential_primes,
    verify_darboux,
)
from diffideal.errors import PreconditionError
from oracles import brute_force_darboux, canonical, frozen

# (DX, DY): two symbols, images of degree <= 2, no positive-dimensional
# Darboux families up to degree 2, Darboux coefficients within [-2, 2].
CORPUS = [
    ("X", "1 + Y^2"),
    ("X^2", "Y"),
    ("X*Y", "Y"),
    ("X", "X + Y"),
    ("1", "Y"),
    ("X^2 + 1", "Y"),
    ("X", "Y^2"),
    ("2*X", "3*Y"),
    ("X", "X*Y"),
    ("Y^2", "X"),
    ("X*Y", "X + Y"),
    ("X + 1", "Y^2 + 1"),
    ("X^2 + Y", "Y"),
    ("Y", "X^2"),
    ("X^2 - 1", "Y"),
    ("X", "Y^2 + X"),
    ("X^2", "X*Y + Y"),
    ("X*Y", "-X*Y + Y^2"),
    ("Y^2", "X^2"),
    ("X - Y", "X + Y^2"),
]


def corpus_ring(dx, dy):
    return make_ring({"X": dx, "Y": dy})


def search_as_dicts(ring, max_deg=2):
    res = darboux_search(ring, SearchConfig(max_deg))
    out = {}
    for pair in res.pairs:
        w = {e: c for e, c in pair.w.terms.items()}
        cw = canonical(w)
        scale = next(cw[e] / w[e] for e in w)
        out[frozen(cw)] = frozen({e: c * scale for e, c in pair.z.terms.items()})
    return res, out


def brute_force(ring):
    images = [{e: c for e, c in ring.image(s).as_poly().terms.items()} for s in ("X", "Y")]
    return brute_force_darboux(images, max_deg=2, box=2)


def test_cofactor_degree_bound(circle_ring, alpha_ring, zero_ring):
    assert cofactor_degree_bound(circle_ring) == 1
    assert cofactor_space(circle_ring).basis == ((0, 0),)
    assert cofactor_degree_bound(alpha_ring) == 3
    # monomials of degree <= 2 in X and a
    assert len(cofactor_space(alpha_ring).basis) == 6
    assert cofactor_degree_bound(zero_ring) == 0


def test_verify_darboux_examples(circle_ring, alpha_ring):
    assert verify_darboux(circle_ring, P("X", circle_ring)) == 1
    z = verify_darboux(alpha_ring, P("X - a", alpha_ring))
    assert z == P("X^2 + (a - 2)*X + a^2 - 2*a + 2", alpha_ring)
    assert verify_darboux(circle_ring, P("X + Y^2", circle_ring)) is None
    with pytest.raises(PreconditionError):
        verify_darboux(circle_ring, circle_ring.poly_ring.zero())


def test_search_circle_ring_is_flagged_as_family(circle_ring):
    res = darboux_search(circle_ring, SearchConfig(1))
    assert [(str(p.w), str(p.z)) for p in res.pairs] == [("X", "1"), ("Y", "1")]
    assert res.completeness == REPRESENTATIVES and res.positive_dimensional


def test_search_over_parameter(alpha_ring):
    res = darboux_search(alpha_ring, SearchConfig(1))
    found = {str(p.w): str(p.z) for p in res.pairs}
    assert found["X - a"] == "X^2 + X*a + a^2 - 2*X - 2*a + 2"


def test_search_tan_ring(tan_ring):
    res = darboux_search(tan_ring, SearchConfig(2))
    assert [(str(p.w), str(p.z)) for p in res.pairs] == [("X", "1"), ("Y^2 + 1", "2*Y")]
    assert res.completeness == COMPLETE


def test_search_trivial_derivation(zero_ring):
    res = darboux_search(zero_ring, SearchConfig(1))
    assert res.pairs == () and res.trivial_derivation
    assert height_one_differential_primes(zero_ring, SearchConfig(1)).pairs == ()


def test_search_results_are_darboux():
    for dx, dy in CORPUS:
        ring = corpus_ring(dx, dy)
        for pair in darboux_search(ring, SearchConfig(2)).pairs:
            assert d_poly(ring, pair.w) == pair.z * pair.w


def test_max_deg_validated():
    with pytest.raises(PreconditionError):
        SearchConfig(0)


@pytest.mark.parametrize("dx, dy", CORPUS[:4])
def test_search_matches_brute_force_sample(dx, dy):
    ring = corpus_ring(dx, dy)
    res, found = search_as_dicts(ring)
    assert res.completeness == COMPLETE
    assert found == brute_force(ring)

import random
import threading
from fractions import Fraction

import pytest
import sympy

from conftest import P, make_ring, random_poly
from diffideal import (
    Ideal,
    PolyRing,
    buchberger,
    differential_closure,
    elimination_ideal,
    ideal_membership,
    is_differential_ideal,
    normal_form,
    solve_zero_dim_rational,
)
from diffideal.errors import DimensionError, IterationCapError
from diffideal.polys import MonomialOrder
from oracles import macaulay_member

R = PolyRing(["X", "Y"], 2)
LEX = MonomialOrder("lex", nsyms=2)


def gb(gens, order=None, ring=R):
    return [str(g) for g in buchberger([P(t, ring) for t in gens], order).basis]


def test_basis_examples():
    assert gb(["X", "Y"]) == ["X", "Y"]
    assert gb(["X", "Y"], LEX) == ["X", "Y"]
    assert gb(["X + Y^2", "X"], LEX) == ["X", "Y^2"]
    assert gb(["X^2 + Y^2", "1"]) == ["1"]
    assert buchberger([P("X^2 + Y^2", R), P("1", R)]).is_unit()


def test_normal_form_examples():
    G = buchberger([P("X", R)])
    assert normal_form(P("X^2", R), G).is_zero()
    assert normal_form(P("Y", R), G) == P("Y", R)
    G2 = buchberger([P("X + Y^2", R), P("X", R)], LEX)
    assert normal_form(P("X + 2*Y^2", R), G2).is_zero()


def test_zero_ideal():
    ideal = Ideal([R.zero()], R)
    assert ideal.is_zero() and ideal.generators == ()
    assert ideal_membership(R.zero(), ideal)
    assert not ideal_membership(P("X", R), ideal)
    assert ideal.is_proper()


def test_differential_ideal_examples(circle_ring):
    assert is_differential_ideal(Ideal([P("X^2 + Y^2", circle_ring)], circle_ring))
    assert not is_differential_ideal(Ideal([P("X + Y^2", circle_ring)], circle_ring))
    assert is_differential_ideal(Ideal([P("X", circle_ring), P("Y", circle_ring)], circle_ring))


def test_differential_closure_examples(circle_ring):
    circle = P("X^2 + Y^2", circle_ring)
    closed = differential_closure(Ideal([circle], circle_ring))
    assert [str(g) for g in closed.groebner().basis] == ["X^2 + Y^2"]

    ring = make_ring({"X": "X", "Y": "X"})
    closed = differential_closure(Ideal([P("Y", ring)], ring))
    assert sorted(str(g) for g in closed.groebner().basis) == ["X", "Y"]
    assert is_differential_ideal(closed)

    unit = differential_closure(Ideal([ring.poly_ring.one()], ring))
    assert unit.is_unit()


def test_differential_closure_cap():
    ring = make_ring({"X": "Y", "Y": "X^2 + Y^2"})
    with pytest.raises(IterationCapError):
        differential_closure(Ideal([P("X^3 - Y^5", ring)], ring), cap=1)


def test_elimination_examples():
    out = elimination_ideal(Ideal([P("X - Y", R), P("Y^2 - 1", R)], R), ["Y"])
    assert [str(g) for g in out.generators] == ["Y^2 - 1"]
    assert elimination_ideal(Ideal([P("X", R)], R), ["Y"]).is_zero()
    assert elimination_ideal(Ideal([R.one()], R), ["Y"]).is_unit()


def test_rational_solving_examples():
    sol = solve_zero_dim_rational(Ideal([P("X^2 - 1", R), P("Y - X", R)], R))
    assert sorted(sol.points) == [(-1, -1), (1, 1)] and sol.nonrational_count == 0
    sol = solve_zero_dim_rational(Ideal([P("X^2 + 1", R), P("Y", R)], R))
    assert sol.points == () and sol.nonrational_count == 2
    sol = solve_zero_dim_rational(Ideal([P("X", R), P("Y", R)], R))
    assert list(sol.points) == [(0, 0)]
    with pytest.raises(DimensionError):
        solve_zero_dim_rational(Ideal([P("X*Y", R)], R))


def test_rational_solving_mixed_roots():
    # (2X - 1)(X^2 - 2) with Y = X + 1/3 and a double root at X = 5
    R3 = PolyRing(["X", "Y"], 2)
    f = P("(2*X - 1)*(X^2 - 2)*(X - 5)^2", R3)
    sol = solve_zero_dim_rational(Ideal([f, P("Y - X - 1/3", R3)], R3))
    assert sorted(sol.points) == [(Fraction(1, 2), Fraction(5, 6)), (5, Fraction(16, 3))]
    assert sol.nonrational_count == 2
    for pt in sol.points:
        assert f.evaluate(pt) == 0


def _sympy_gb(gens, order, ring):
    syms = sympy.symbols(ring.symbols)
    exprs = [sympy.sympify(str(g).replace("^", "**"), locals=dict(zip(ring.symbols, syms))) for g in gens]
    G = sympy.groebner(exprs, *syms, order=order, domain="QQ")
    return [P(str(g.as_expr()).replace("**", "^"), ring).monic() for g in G.exprs]


@pytest.mark.parametrize("kind", ["lex", "grevlex"])
def test_matches_sympy_reduced_basis(kind):
    rng = random.Random(7 if kind == "lex" else 8)
    ring = PolyRing(["X", "Y", "Z"], 3, kind)
    for _ in range(40):
        gens = [random_poly(rng, ring, max_deg=2, bound=4, max_terms=3, nonzero=True) for _ in range(rng.randint(1, 3))]
        ours = buchberger(gens).basis
        theirs = _sympy_gb(gens, kind, ring)
        assert sorted(map(str, ours)) == sorted(map(str, theirs)), gens


def test_basis_is_reduced_and_generates():
    rng = random.Random(3)
    ring = PolyRing(["X", "Y", "Z"], 3)
    for _ in range(30):
        gens = [random_poly(rng, ring, max_deg=2, bound=5, max_terms=3, nonzero=True) for _ in range(3)]
        G = buchberger(gens)
        for g in gens:
            assert normal_form(g, G).is_zero()
        lms = G.leading_monomials()
        for i, g in enumerate(G.basis):
            assert g.leading_coeff() == 1
            for e in g.terms:
                for j, m in enumerate(lms):
                    if j != i:
                        assert not all(x <= y for x, y in zip(m, e))


def _as_dict(p):
    return {e: Fraction(c) for e, c in p.terms.items()}


def membership_queries(seed, count):
    """Half constructed members, half random polynomials."""
    rng = random.Random(seed)
    ring = PolyRing(["X", "Y", "Z"], 3)
    out = []
    for k in range(count):
        gens = [random_poly(rng, ring, max_deg=2, bound=3, max_terms=3, nonzero=True) for _ in range(rng.randint(1, 3))]
        if k % 2 == 0:
            p = ring.zero()
            for g in gens:
                p = p + g * random_poly(rng, ring, max_deg=1, bound=3, max_terms=3)
        else:
            p = random_poly(rng, ring, max_deg=3, bound=5, max_terms=4)
        out.append((ring, gens, p))
    return out


def macaulay_agrees(ring, gens, p):
    degree = max([p.total_degree()] + [g.total_degree() for g in gens]) + 4
    oracle = macaulay_member(_as_dict(p), [_as_dict(g) for g in gens], ring.ngens, degree)
    return ideal_membership(p, Ideal(gens, ring)) == oracle


def test_membership_against_macaulay_oracle():
    for ring, gens, p in membership_queries(11, 30):
        assert macaulay_agrees(ring, gens, p), (gens, p)


def test_groebner_cache_is_thread_safe():
    ideal = Ideal([P("X^3 - Y", R), P("X*Y^2 - 1", R)], R)
    results = []

    def work():
        results.append(tuple(ideal.groebner().basis))

    threads = [threading.Thread(target=work) for _ in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert len(set(results)) == 1

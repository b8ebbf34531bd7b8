"""Bundled worked examples with committed golden reports.

paper-s1-circle
    Q[X, Y] with DX = X, DY = Y and the ideal (X^2 + Y^2): X/Y is a constant
    and the Darboux polynomials of degree one form the pencil aX + bY.
paper-s2-family-k<N>
    Q[X, a1..aN] with D(ai) = ai^3 - 2ai^2 + 2ai and DX = X^3 - 2X^2 + 2X.
    The family runs over infinitely many parameters; only the first N <= 8
    are kept. Each (X - ai) is a differential prime and their
    cofactors admit no integer relation.
"""

from __future__ import annotations

import difflib
from fractions import Fraction
from pathlib import Path
from typing import Callable, Dict, List

from . import report
from .constants import constant_family, lattice_constants, localization_witness
from .darboux import DarbouxPair, SearchConfig, darboux_search, verify_darboux
from .derivation import DifferentialRing, d_poly, is_constant
from .errors import PreconditionError
from .groebner import Ideal, is_differential_ideal
from .polys import PolyRing, associates, product
from .problem import format_problem
from .ratfunc import RationalFunction
from .textsyntax import parse_poly

GOLDEN_DIR = Path(__file__).with_name("golden")
MAX_K = 8


def s1_ring() -> DifferentialRing:
    pr = PolyRing(["X", "Y"], 2)
    return DifferentialRing(["X", "Y"], [], {"X": pr.gen("X"), "Y": pr.gen("Y")}, poly_ring=pr)


def s2_ring(k: int) -> DifferentialRing:
    if not 1 <= k <= MAX_K:
        raise PreconditionError(f"k must be between 1 and {MAX_K}, got {k}")
    params = [f"a{i}" for i in range(1, k + 1)]
    pr = PolyRing(["X"] + params, 1)
    images = {s: parse_poly(f"{s}^3 - 2*{s}^2 + 2*{s}", pr) for s in pr.symbols}
    return DifferentialRing(["X"], params, images, poly_ring=pr)


def _check(name, passed, **detail):
    return {"name": name, "passed": bool(passed), **detail}


def run_s1() -> dict:
    ring = s1_ring()
    pr = ring.poly_ring
    X, Y = pr.gens()
    circle = X**2 + Y**2
    checks = []

    cof = verify_darboux(ring, circle)
    checks.append(
        _check(
            "(X^2 + Y^2) is a differential ideal",
            is_differential_ideal(Ideal([circle], ring)),
            derivative=report.poly(d_poly(ring, circle)),
        )
    )
    checks.append(_check("D(X^2 + Y^2) = 2*(X^2 + Y^2)", cof is not None and cof == 2, cofactor=report.poly(cof)))
    checks.append(_check("(X, Y) is a differential ideal", is_differential_ideal(Ideal([X, Y], ring))))
    xy = RationalFunction(X, Y)
    checks.append(_check("X/Y is a constant", is_constant(ring, xy)))

    res = darboux_search(ring, SearchConfig(1))
    checks.append(
        _check(
            "degree-1 Darboux polynomials form a positive-dimensional family",
            res.positive_dimensional,
            search=report.darboux_result(res, pr.symbols),
        )
    )

    cs = [Fraction(c) for c in range(1, 11)]
    fam = constant_family(ring, X, Y, cs)
    checks.append(
        _check(
            "(X - c*Y) proper, differential and pairwise distinct for 10 values of c",
            fam.all_ok() and len(fam.members) == 10,
            family=report.family_report(fam),
        )
    )

    consts = lattice_constants(ring, res.pairs)
    checks.append(
        _check(
            "cofactor lattice recovers X/Y from (1, -1)",
            any(c.value == xy and c.dependence.coefficients == (1, -1) for c in consts),
            constants=[report.candidate(c) for c in consts],
        )
    )
    return {"ring": format_problem(ring), "checks": checks}


def run_s2(k: int) -> dict:
    ring = s2_ring(k)
    pr = ring.poly_ring
    X = pr.gen("X")
    checks = []
    pairs = []
    for i in range(1, k + 1):
        a = pr.gen(f"a{i}")
        w = X - a
        expected = X**2 + (a - 2) * X + a**2 - 2 * a + 2
        z = verify_darboux(ring, w)
        checks.append(
            _check(
                f"D(X - a{i}) = (X^2 + (a{i} - 2)*X + a{i}^2 - 2*a{i} + 2)*(X - a{i})",
                z is not None and z == expected,
                cofactor=report.poly(z) if z is not None else None,
            )
        )
        checks.append(_check(f"(X - a{i}) is a differential ideal", is_differential_ideal(Ideal([w], ring))))
        if z is not None:
            pairs.append(DarbouxPair(w, z))
    distinct = all(not associates(p.w, q.w) for i, p in enumerate(pairs) for q in pairs[i + 1 :])
    checks.append(_check(f"the {k} primes (X - ai) are pairwise non-associate", distinct and len(pairs) == k))
    consts = lattice_constants(ring, pairs)
    checks.append(
        _check(
            "no integer relation among the cofactors (no lattice constant)",
            not consts,
            constants=[report.candidate(c) for c in consts],
        )
    )
    wit = localization_witness(ring, primes=pairs)
    expected_witness = product((p.w for p in pairs), pr) * d_poly(ring, X)
    checks.append(
        _check(
            "witness (prod (X - ai))*DX lies in every (X - ai)",
            all(wit.coverage) and wit.witness == expected_witness,
            witness=report.poly(wit.witness),
        )
    )
    return {
        "ring": format_problem(ring),
        "truncation": f"{k} of the infinitely many parameters",
        "checks": checks,
    }


SCENARIOS: Dict[str, Callable[[], dict]] = {"paper-s1-circle": run_s1}
for _k in range(1, MAX_K + 1):
    SCENARIOS[f"paper-s2-family-k{_k}"] = (lambda k: (lambda: run_s2(k)))(_k)


def run_scenario(name: str) -> dict:
    if name not in SCENARIOS:
        raise PreconditionError(f"unknown scenario {name!r}; available: {', '.join(SCENARIOS)}")
    payload = SCENARIOS[name]()
    payload["all_passed"] = all(c["passed"] for c in payload["checks"])
    return {"scenario": name, **payload}


def golden_path(name: str) -> Path:
    return GOLDEN_DIR / f"{name}.json"


def compare_golden(name: str, payload: dict) -> List[str]:
    """Unified diff between the committed golden payload and ``payload`` (empty when equal)."""
    path = golden_path(name)
    current = report.dumps(payload)
    if not path.exists():
        return [f"no golden file at {path}; run with --bless to create it\n"]
    golden = path.read_text()
    if golden == current:
        return []
    return list(difflib.unified_diff(golden.splitlines(True), current.splitlines(True), str(path), "current"))


def bless(name: str, payload: dict) -> Path:
    path = golden_path(name)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(report.dumps(payload))
    return path

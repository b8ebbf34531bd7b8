"""JSON-ready views of analysis results and the report envelope."""

from __future__ import annotations

import json
from fractions import Fraction

from .constants import CandidateConstant, ConstantFamilyReport, ConstantReport, LocalizationWitness
from .darboux import DarbouxPair, DarbouxResult
from .polys import Poly
from .ratfunc import RationalFunction
from .textsyntax import format_coeff, format_monomial, format_poly, format_ratfunc

SCHEMA_VERSION = 1


def rational(c: Fraction) -> str:
    return format_coeff(Fraction(c))


def poly(p: Poly) -> str:
    return format_poly(p)


def ratfunc(r: RationalFunction) -> str:
    return format_ratfunc(r)


def pair(p: DarbouxPair) -> dict:
    return {"w": poly(p.w), "z": poly(p.z)}


def darboux_result(res: DarbouxResult, symbols) -> dict:
    return {
        "pairs": [pair(p) for p in res.pairs],
        "completeness": res.completeness,
        "positive_dimensional": res.positive_dimensional,
        "trivial_derivation": res.trivial_derivation,
        "slices": [
            {
                "leading": format_monomial(s.leading, symbols) or "1",
                "zero_dimensional": s.zero_dimensional,
                "rational_solutions": s.solutions,
                "nonrational_solutions": s.nonrational,
            }
            for s in res.slices
        ],
    }


def candidate(c: CandidateConstant) -> dict:
    return {"value": ratfunc(c.value), "dependence": list(c.dependence.coefficients)}


def constant_report(rep: ConstantReport) -> dict:
    return {
        "constants": [candidate(c) for c in rep.constants],
        "primes": [pair(p) for p in rep.primes],
        "completeness": rep.completeness,
        "verdict": rep.verdict,
        "max_deg": rep.max_deg,
        "trivial_derivation": rep.trivial_derivation,
        "summary": (
            f"{len(rep.constants)} constant(s) found"
            if rep.constants
            else f"none found up to degree {rep.max_deg}"
        ),
    }


def family_report(rep: ConstantFamilyReport) -> dict:
    return {
        "constant": ratfunc(rep.constant),
        "members": [
            {
                "c": rational(m.c),
                "generator": poly(m.generator),
                "proper": m.proper,
                "differential": m.differential,
                "distinct": m.distinct,
            }
            for m in rep.members
        ],
        "all_ok": rep.all_ok(),
    }


def witness_report(w: LocalizationWitness) -> dict:
    return {
        "witness": poly(w.witness),
        "t": poly(w.t),
        "primes": [pair(p) for p in w.primes],
        "coverage": list(w.coverage),
        "heuristic": w.heuristic,
    }


def envelope(command: str, inputs: dict, results: dict, completeness: dict, elapsed: float) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "inputs": inputs,
        "results": results,
        "completeness": completeness,
        "timing": {"elapsed_seconds": round(elapsed, 6)},
    }


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"

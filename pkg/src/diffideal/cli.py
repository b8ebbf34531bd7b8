"""Command-line front end: ``diffideal <command> [args] [options]``.

Exit codes: 0 success, 2 precondition/input error, 1 internal error or a
scenario that disagrees with its golden report.
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import replace
from typing import List, Optional, Sequence, Tuple

from . import report, scenarios
from .constants import (
    constant_family,
    first_integral_lattice,
    localization_witness,
    new_constant_report,
)
from .darboux import SearchConfig, darboux_search, height_one_differential_primes
from .derivation import d_poly, d_ratfunc
from .errors import PreconditionError
from .groebner import Ideal, differential_closure, is_differential_ideal, normal_form
from .problem import Problem, default_max_deg, format_problem, parse_c_list, parse_problem
from .textsyntax import parse_poly, parse_ratfunc

COMMANDS = (
    "apply",
    "is-constant",
    "is-diff-ideal",
    "diff-closure",
    "darboux",
    "primes",
    "first-integrals",
    "report",
    "family",
    "witness",
    "show",
    "scenario",
)

ARITY = {"apply": (1, 1), "is-constant": (1, 1), "is-diff-ideal": (1, None), "diff-closure": (1, None),
         "family": (2, 2), "scenario": (1, 1)}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="diffideal", description="Constants of derivations and differential ideals.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("args", nargs="*", help="expressions or scenario name, depending on the command")
    p.add_argument("--problem", metavar="FILE", help="problem file declaring the differential ring")
    p.add_argument("--max-deg", type=int, help="degree bound for Darboux searches (env DIFFIDEAL_MAX_DEG)")
    p.add_argument("--order", choices=("lex", "grevlex"), help="monomial order")
    p.add_argument("--c", dest="c", help="comma-separated rationals for 'family'")
    p.add_argument("--clear-denominators", action="store_true", help="rescale D so every image is a polynomial")
    p.add_argument("--json", action="store_true", help="print the JSON report envelope")
    p.add_argument("--bless", action="store_true", help="rewrite the golden file of a scenario")
    return p


def _load(ns) -> Problem:
    if not ns.problem:
        raise PreconditionError(f"command '{ns.command}' needs --problem FILE")
    prob = parse_problem(ns.problem, clear=ns.clear_denominators)
    if ns.order and ns.order != prob.ring.poly_ring.order.kind:
        prob = replace(prob, ring=prob.ring.with_order(ns.order), options=replace(prob.options, order=ns.order))
    return prob


def _max_deg(ns, prob: Problem) -> int:
    if ns.max_deg is not None:
        if ns.max_deg < 1:
            raise PreconditionError("--max-deg must be >= 1")
        return ns.max_deg
    if prob.options.max_deg is not None:
        return prob.options.max_deg
    return default_max_deg()


def run_command(cmd: str, prob: Problem, args: Sequence[str], max_deg: int, cs=()) -> Tuple[dict, dict]:
    """Dispatch one analysis; returns (results payload, completeness flags)."""
    ring = prob.ring
    pr = ring.poly_ring
    cfg = SearchConfig(max_deg)
    if cmd == "apply":
        r = parse_ratfunc(args[0], pr)
        if r.is_polynomial() and ring.has_polynomial_images():
            return {"input": report.ratfunc(r), "derivative": report.poly(d_poly(ring, r.num))}, {}
        return {"input": report.ratfunc(r), "derivative": report.ratfunc(d_ratfunc(ring, r))}, {}
    if cmd == "is-constant":
        r = parse_ratfunc(args[0], pr)
        d = d_ratfunc(ring, r)
        return {"input": report.ratfunc(r), "derivative": report.ratfunc(d), "is_constant": d.is_zero()}, {}
    if cmd == "is-diff-ideal":
        gens = [parse_poly(a, pr) for a in args]
        ideal = Ideal(gens, ring)
        G = ideal.groebner()
        rows = []
        for g in ideal.generators:
            dg = d_poly(ring, g)
            rows.append({"generator": report.poly(g), "derivative": report.poly(dg),
                         "remainder": report.poly(normal_form(dg, G))})
        return {"generators": [report.poly(g) for g in ideal.generators],
                "is_differential": is_differential_ideal(ideal), "derivatives": rows}, {}
    if cmd == "diff-closure":
        ideal = Ideal([parse_poly(a, pr) for a in args], ring)
        closed = differential_closure(ideal)
        return {"generators": [report.poly(g) for g in ideal.generators],
                "closure": [report.poly(g) for g in closed.generators],
                "groebner_basis": [report.poly(g) for g in closed.groebner().basis]}, {}
    if cmd == "darboux":
        res = darboux_search(ring, cfg)
        return report.darboux_result(res, pr.symbols), {"darboux": res.completeness}
    if cmd == "primes":
        res = height_one_differential_primes(ring, cfg)
        return report.darboux_result(res, pr.symbols), {"darboux": res.completeness}
    if cmd == "first-integrals":
        res = height_one_differential_primes(ring, cfg)
        consts = first_integral_lattice(ring, cfg)
        return ({"constants": [report.candidate(c) for c in consts], "primes": [report.pair(p) for p in res.pairs]},
                {"darboux": res.completeness})
    if cmd == "report":
        rep = new_constant_report(ring, cfg)
        return report.constant_report(rep), {"darboux": rep.completeness, "verdict": rep.verdict}
    if cmd == "family":
        if not cs:
            raise PreconditionError("family needs sample values: --c 1,2,3 or 'c = ...' in the problem options")
        f, g = parse_poly(args[0], pr), parse_poly(args[1], pr)
        return report.family_report(constant_family(ring, f, g, cs)), {}
    if cmd == "witness":
        wit = localization_witness(ring, cfg)
        return report.witness_report(wit), {"witness": "heuristic" if wit.heuristic else "complete-search"}
    if cmd == "show":
        return {"problem": format_problem(ring, prob.options)}, {}
    raise PreconditionError(f"unknown command {cmd!r}")


def _render_text(value, indent=0) -> List[str]:
    pad = "  " * indent
    lines = []
    if isinstance(value, dict):
        for k, v in value.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.extend(_render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(value, list):
        for item in value:
            if isinstance(item, (dict, list)):
                sub = _render_text(item, indent + 1)
                lines.append(f"{pad}- {sub[0].strip()}")
                lines.extend(sub[1:])
            else:
                lines.append(f"{pad}- {_scalar(item)}")
    else:
        lines.append(f"{pad}{_scalar(value)}")
    return lines


def _scalar(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return "-"
    if isinstance(v, (list, dict)):
        return "[]" if isinstance(v, list) else "{}"
    if isinstance(v, str) and "\n" in v:
        return "|\n" + "\n".join("    " + line for line in v.rstrip("\n").splitlines())
    return str(v)


def _emit(env: dict, as_json: bool, out):
    if as_json:
        out.write(report.dumps(env))
        return
    out.write(f"# {env['command']}\n")
    for line in _render_text(env["results"]):
        out.write(line + "\n")
    if env["completeness"]:
        for k, v in env["completeness"].items():
            out.write(f"[{k}] {v}\n")


def _scenario(ns, out) -> int:
    name = ns.args[0]
    start = time.perf_counter()
    payload = scenarios.run_scenario(name)
    elapsed = time.perf_counter() - start
    env = report.envelope("scenario", {"scenario": name}, payload, {}, elapsed)
    if ns.bless:
        path = scenarios.bless(name, payload)
        out.write(f"blessed {path}\n")
        return 0
    diff = scenarios.compare_golden(name, payload)
    _emit(env, ns.json, out)
    if diff:
        sys.stderr.write("golden mismatch:\n" + "".join(diff))
        return 1
    return 0 if payload["all_passed"] else 1


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    ns = build_parser().parse_args(argv)
    try:
        lo, hi = ARITY.get(ns.command, (0, 0))
        if len(ns.args) < lo or (hi is not None and len(ns.args) > hi):
            want = f"{lo}" if lo == hi else f"at least {lo}" if hi is None else f"{lo}-{hi}"
            raise PreconditionError(f"'{ns.command}' takes {want} argument(s), got {len(ns.args)}")
        if ns.command == "scenario":
            return _scenario(ns, out)
        prob = _load(ns)
        max_deg = _max_deg(ns, prob)
        cs = parse_c_list(ns.c) if ns.c else prob.options.c
        start = time.perf_counter()
        results, completeness = run_command(ns.command, prob, ns.args, max_deg, cs)
        elapsed = time.perf_counter() - start
        inputs = {
            "problem": format_problem(prob.ring, prob.options),
            "args": list(ns.args),
            "max_deg": max_deg,
            "order": prob.ring.poly_ring.order.kind,
        }
        if prob.clearing_factor is not None:
            inputs["clearing_factor"] = report.poly(prob.clearing_factor)
        if cs:
            inputs["c"] = [report.rational(c) for c in cs]
        _emit(report.envelope(ns.command, inputs, results, completeness, elapsed), ns.json, out)
        return 0
    except PreconditionError as e:
        sys.stderr.write(f"error: {e}\n")
        return 2
    except Exception as e:  # noqa: BLE001 - surfaced as exit code 1
        sys.stderr.write(f"internal error: {type(e).__name__}: {e}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())

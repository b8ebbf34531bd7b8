"""Line-oriented problem files.

    # comments start with '#'
    vars: X, Y
    params: a
    derivation:
      D X = X
      D Y = Y
      D a = 0
    options:
      order = grevlex
      max_deg = 2
      c = 1, 2, 3

``params:`` and ``options:`` are optional. Every declared symbol needs
exactly one ``D <name> = <expr>`` line.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field, replace
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

from .derivation import DifferentialRing, clear_denominators
from .errors import ParseError, PreconditionError
from .polys import ORDER_KINDS, Poly, PolyRing
from .ratfunc import RationalFunction
from .textsyntax import format_coeff, format_ratfunc, parse_ratfunc, parse_rational, valid_name

DEFAULT_MAX_DEG = 2
MAX_DEG_ENV = "DIFFIDEAL_MAX_DEG"


def default_max_deg() -> int:
    raw = os.environ.get(MAX_DEG_ENV)
    if raw is None:
        return DEFAULT_MAX_DEG
    try:
        value = int(raw)
    except ValueError:
        raise PreconditionError(f"{MAX_DEG_ENV} must be an integer, got {raw!r}") from None
    if value < 1:
        raise PreconditionError(f"{MAX_DEG_ENV} must be >= 1, got {value}")
    return value


@dataclass(frozen=True)
class Options:
    order: str = "grevlex"
    max_deg: Optional[int] = None
    c: Tuple[Fraction, ...] = ()


@dataclass(frozen=True)
class Problem:
    ring: DifferentialRing
    options: Options = field(default_factory=Options)
    clearing_factor: Optional[Poly] = None


def _split_names(text: str, line: int, col: int) -> List[str]:
    names = [n.strip() for n in text.split(",")] if text.strip() else []
    for n in names:
        if not valid_name(n):
            raise ParseError(f"invalid symbol name {n!r}", line, col)
    return names


def parse_problem_text(text: str, clear: bool = False) -> Problem:
    variables: Optional[List[str]] = None
    params: List[str] = []
    raw_images: Dict[str, Tuple[str, int, int]] = {}
    opts: Dict[str, Tuple[str, int]] = {}
    section = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        stripped = line.strip()
        indent = len(line) - len(line.lstrip())
        head, sep, rest = stripped.partition(":")
        if sep and head in ("vars", "params", "derivation", "options"):
            col = indent + len(head) + 2
            if head == "vars":
                variables = _split_names(rest, lineno, col)
            elif head == "params":
                params = _split_names(rest, lineno, col)
            elif rest.strip():
                raise ParseError(f"section '{head}:' takes no inline value", lineno, col)
            section = head
            continue
        if section == "derivation":
            lhs, eq, rhs = stripped.partition("=")
            parts = lhs.split()
            if not eq or len(parts) != 2 or parts[0] != "D":
                raise ParseError("expected 'D <name> = <expression>'", lineno, indent + 1)
            name = parts[1]
            if name in raw_images:
                raise ParseError(f"duplicate derivation image for {name}", lineno, indent + 1)
            col = indent + len(lhs) + 2 + (len(rhs) - len(rhs.lstrip()))
            raw_images[name] = (rhs.strip(), lineno, col)
        elif section == "options":
            key, eq, value = stripped.partition("=")
            if not eq:
                raise ParseError("expected '<option> = <value>'", lineno, indent + 1)
            opts[key.strip()] = (value.strip(), lineno)
        else:
            raise ParseError(f"unexpected line outside any section: {stripped!r}", lineno, indent + 1)

    if variables is None:
        raise ParseError("missing 'vars:' section")
    symbols = variables + params
    if len(set(symbols)) != len(symbols):
        raise ParseError(f"duplicate symbol names in {symbols}")
    options = _parse_options(opts)
    pr = PolyRing(symbols, len(variables), options.order)
    for name, (_, lineno, col) in raw_images.items():
        if name not in symbols:
            raise ParseError(f"unknown symbol {name!r} in derivation", lineno, col)
    images: Dict[str, RationalFunction] = {}
    for name in symbols:
        if name not in raw_images:
            raise ParseError(f"no derivation image for {name}")
        expr, lineno, col = raw_images[name]
        images[name] = parse_ratfunc(expr, pr, lineno, col)
    ring = DifferentialRing(variables, params, images, poly_ring=pr)
    factor = None
    if not ring.has_polynomial_images():
        if not clear:
            bad = [s for s, img in images.items() if not img.is_polynomial()]
            raise ParseError(
                f"derivation image of {', '.join(bad)} is a rational function; "
                "rescale D by a factor from the parameter field (use --clear-denominators)",
                raw_images[bad[0]][1],
            )
        ring, factor = clear_denominators(ring)
    return Problem(ring, options, factor)


def _parse_options(opts) -> Options:
    out = Options()
    for key, (value, lineno) in opts.items():
        if key == "order":
            if value not in ORDER_KINDS:
                raise ParseError(f"order must be one of {ORDER_KINDS}", lineno)
            out = replace(out, order=value)
        elif key == "max_deg":
            try:
                n = int(value)
            except ValueError:
                raise ParseError(f"max_deg must be an integer, got {value!r}", lineno) from None
            if n < 1:
                raise ParseError("max_deg must be >= 1", lineno)
            out = replace(out, max_deg=n)
        elif key == "c":
            try:
                out = replace(out, c=parse_c_list(value))
            except ParseError as e:
                raise ParseError(e.message, lineno) from None
        else:
            raise ParseError(f"unknown option {key!r}", lineno)
    return out


def parse_c_list(text: str) -> Tuple[Fraction, ...]:
    return tuple(parse_rational(t) for t in text.split(",") if t.strip())


def parse_problem(path: Union[str, Path], clear: bool = False) -> Problem:
    return parse_problem_text(Path(path).read_text(), clear)


def format_problem(ring: DifferentialRing, options: Optional[Options] = None) -> str:
    lines = [f"vars: {', '.join(ring.variables)}"]
    if ring.parameters:
        lines.append(f"params: {', '.join(ring.parameters)}")
    lines.append("derivation:")
    for name, img in ring.images().items():
        lines.append(f"  D {name} = {format_ratfunc(img)}")
    opts = options or Options(order=ring.poly_ring.order.kind)
    lines.append("options:")
    lines.append(f"  order = {opts.order}")
    if opts.max_deg is not None:
        lines.append(f"  max_deg = {opts.max_deg}")
    if opts.c:
        lines.append(f"  c = {', '.join(format_coeff(c) for c in opts.c)}")
    return "\n".join(lines) + "\n"

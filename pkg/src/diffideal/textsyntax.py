"""Text syntax for polynomials and rational functions.

Polynomials print as ``3/2*X^2*Y - 1``: terms joined by ``+``/``-``,
coefficients as integers or ``p/q``, powers as ``^``, every product spelled
with an explicit ``*``. The parser also accepts parentheses and ``/``
between factors so derivation images like ``X/a`` can be read; implicit
multiplication (``2X``, ``X Y``) is rejected.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import List, NamedTuple

from .errors import ParseError
from .polys import Poly, PolyRing
from .ratfunc import RationalFunction

NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


def format_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_monomial(exp, symbols) -> str:
    parts = []
    for name, k in zip(symbols, exp):
        if k == 1:
            parts.append(name)
        elif k > 1:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def format_poly(p: Poly, order=None) -> str:
    if p.is_zero():
        return "0"
    out = []
    for i, (e, c) in enumerate(p.sorted_terms(order)):
        sign = "-" if c < 0 else "+"
        a = -c if c < 0 else c
        mono = format_monomial(e, p.ring.symbols)
        if not mono:
            body = format_coeff(a)
        elif a == 1:
            body = mono
        else:
            body = f"{format_coeff(a)}*{mono}"
        if i == 0:
            out.append(body if sign == "+" else f"-{body}")
        else:
            out.append(f"{sign} {body}")
    return " ".join(out)


def format_ratfunc(r: RationalFunction) -> str:
    if r.den == 1:
        return format_poly(r.num)
    num = format_poly(r.num)
    if len(r.num) > 1:
        num = f"({num})"
    den = format_poly(r.den)
    if len(r.den) > 1 or not _is_bare_monomial(r.den):
        den = f"({den})"
    return f"{num}/{den}"


def _is_bare_monomial(p: Poly) -> bool:
    # a single power like Y or Y^2; products need parentheses after '/'
    (e, c), = p.items()
    return c == 1 and sum(1 for k in e if k) == 1


class _Tok(NamedTuple):
    kind: str
    text: str
    col: int


_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9_]*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str, line, col0) -> List[_Tok]:
    toks = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            bad = len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[pos + bad]!r}", line, col0 + pos + bad)
        num, name, op = m.groups()
        start = m.start(m.lastindex)
        if num is not None:
            toks.append(_Tok("num", num, col0 + start))
        elif name is not None:
            toks.append(_Tok("name", name, col0 + start))
        else:
            toks.append(_Tok("op", "^" if op == "**" else op, col0 + start))
        pos = m.end()
    toks.append(_Tok("end", "", col0 + len(text)))
    return toks


class _Parser:
    # values are (numerator Poly, denominator Poly) pairs; reduced once at the end

    def __init__(self, text, ring: PolyRing, line=None, col0=1):
        self.ring = ring
        self.line = line
        self.toks = _tokenize(text, line, col0)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, self.line, tok.col)

    def parse(self):
        if self.peek().kind == "end":
            self.error("empty expression")
        val = self.expr()
        self.expect("end")
        return val

    def expect(self, kind, text=""):
        tok = self.peek()
        if tok.kind == kind and (not text or tok.text == text):
            return self.take()
        if tok.kind in ("num", "name") or tok.text == "(":
            self.error("implicit multiplication is not allowed; write '*' explicitly")
        self.error(f"expected {text or kind!r}, got {tok.text or 'end of input'!r}")

    def expr(self):
        sign = 1
        if self.peek().kind == "op" and self.peek().text in ("+", "-"):
            sign = -1 if self.take().text == "-" else 1
        num, den = self.term()
        if sign < 0:
            num = -num
        while self.peek().kind == "op" and self.peek().text in ("+", "-"):
            op = self.take().text
            n2, d2 = self.term()
            if op == "-":
                n2 = -n2
            if den == d2:
                num = num + n2
            else:
                num, den = num * d2 + n2 * den, den * d2
        return num, den

    def term(self):
        num, den = self.factor()
        while self.peek().kind == "op" and self.peek().text in ("*", "/"):
            op = self.take()
            n2, d2 = self.factor()
            if op.text == "*":
                num, den = num * n2, den * d2
            else:
                if n2.is_zero():
                    self.error("division by zero", op)
                num, den = num * d2, den * n2
        return num, den

    def factor(self):
        num, den = self.atom()
        if self.peek().kind == "op" and self.peek().text == "^":
            self.take()
            tok = self.take()
            if tok.kind != "num":
                raise ParseError("exponent must be a non-negative integer", self.line, tok.col)
            k = int(tok.text)
            num, den = num**k, den**k
        return num, den

    def atom(self):
        tok = self.take()
        one = self.ring.one()
        if tok.kind == "num":
            return self.ring.const(int(tok.text)), one
        if tok.kind == "name":
            if tok.text not in self.ring.symbols:
                raise ParseError(f"unknown symbol {tok.text!r}", self.line, tok.col)
            return self.ring.gen(tok.text), one
        if tok.text == "(":
            val = self.expr()
            self.expect("op", ")")
            return val
        if tok.text == "-":
            # unary minus inside a factor, e.g. X^2*-1 is rejected; allow (-X) only
            self.error("unexpected '-'; wrap negative factors in parentheses", tok)
        self.error(f"unexpected {tok.text or 'end of input'!r}", tok)


def parse_ratfunc(text: str, ring: PolyRing, line=None, col0=1) -> RationalFunction:
    num, den = _Parser(text, ring, line, col0).parse()
    if den.is_zero():
        raise ParseError("division by zero", line, col0)
    return RationalFunction(num, den)


def parse_poly(text: str, ring: PolyRing, line=None, col0=1) -> Poly:
    num, den = _Parser(text, ring, line, col0).parse()
    if den.is_ground():
        return num * (1 / den.ground_value())
    r = RationalFunction(num, den)
    if not r.is_polynomial():
        raise ParseError(f"expected a polynomial, got rational function {r}", line, col0)
    return r.num


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not a rational number: {text!r}") from None


def valid_name(name: str) -> bool:
    return bool(NAME_RE.match(name))

"""Test-only oracles that share no algebra code with the package.

Polynomials here are plain ``{exponent tuple: Fraction}`` dicts.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import gcd
from typing import Dict, List, Sequence, Tuple

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

Dict_ = Dict[Tuple[int, ...], Fraction]


def d_add(a: Dict_, b: Dict_, s=1) -> Dict_:
    out = dict(a)
    for e, c in b.items():
        v = out.get(e, 0) + s * c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def d_mul(a: Dict_, b: Dict_) -> Dict_:
    out: Dict_ = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = out.get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c}


def d_diff(a: Dict_, i: int) -> Dict_:
    out = {}
    for e, c in a.items():
        if e[i]:
            f = list(e)
            f[i] -= 1
            out[tuple(f)] = c * e[i]
    return out


def d_deg(a: Dict_) -> int:
    return max((sum(e) for e in a), default=-1)


def _lead(a: Dict_):
    return max(a, key=lambda e: (sum(e), e))


def d_divide(a: Dict_, b: Dict_):
    """Exact quotient a/b, or None when b does not divide a."""
    q: Dict_ = {}
    r = dict(a)
    lb = _lead(b)
    cb = b[lb]
    while r:
        lr = _lead(r)
        if any(x < y for x, y in zip(lr, lb)):
            return None
        e = tuple(x - y for x, y in zip(lr, lb))
        c = Fraction(r[lr]) / cb
        q[e] = c
        r = d_add(r, d_mul({e: c}, b), -1)
    return q


def canonical(a: Dict_) -> Dict_:
    """Scale to coprime integers with positive coefficient on the largest (degree, exponent)."""
    den = 1
    for c in a.values():
        den = den * Fraction(c).denominator // gcd(den, Fraction(c).denominator)
    ints = {e: int(Fraction(c) * den) for e, c in a.items()}
    g = 0
    for c in ints.values():
        g = gcd(g, c)
    s = 1 if ints[_lead(ints)] > 0 else -1
    return {e: Fraction(s * c // g) for e, c in ints.items()}


def frozen(a: Dict_):
    return frozenset(a.items())


def exponents(nsyms: int, degree: int) -> List[Tuple[int, ...]]:
    return [e for e in itertools.product(range(degree + 1), repeat=nsyms) if sum(e) <= degree]


# -- Macaulay-matrix membership -------------------------------------------------


def macaulay_member(p: Dict_, gens: Sequence[Dict_], nsyms: int, degree: int) -> bool:
    """p lies in the Q-span of {m*g : deg(m*g) <= degree}; a degree-truncated membership test."""
    if not p:
        return True
    rows_idx = {e: i for i, e in enumerate(exponents(nsyms, degree))}
    if d_deg(p) > degree:
        raise ValueError("degree bound below deg(p)")
    cols = []
    for g in gens:
        dg = d_deg(g)
        if dg < 0 or dg > degree:
            continue
        for m in exponents(nsyms, degree - dg):
            cols.append(d_mul({m: Fraction(1)}, g))
    n = len(rows_idx)

    def matrix(columns):
        rows = [[QQ(0)] * len(columns) for _ in range(n)]
        for j, col in enumerate(columns):
            for e, c in col.items():
                rows[rows_idx[e]][j] = QQ(c.numerator, c.denominator)
        return DomainMatrix(rows, (n, len(columns)), QQ)

    if not cols:
        return False
    return matrix(cols).rank() == matrix(cols + [p]).rank()


# -- Brute-force Darboux enumeration --------------------------------------------


def apply_derivation(images: Sequence[Dict_], w: Dict_) -> Dict_:
    out: Dict_ = {}
    for i, img in enumerate(images):
        out = d_add(out, d_mul(img, d_diff(w, i)))
    return out


def brute_force_darboux(images: Sequence[Dict_], max_deg: int = 2, box: int = 2):
    """All primitive non-constant Darboux polynomials with integer coefficients in [-box, box].

    Returns {frozen canonical w: frozen cofactor}, keeping only those with no
    Darboux divisor of strictly smaller positive degree in the same box.
    """
    nsyms = len(images)
    monos = [e for e in exponents(nsyms, max_deg) if sum(e) > 0] + [(0,) * nsyms]
    found: Dict[frozenset, Tuple[Dict_, Dict_]] = {}
    for coeffs in itertools.product(range(-box, box + 1), repeat=len(monos)):
        w = {e: Fraction(c) for e, c in zip(monos, coeffs) if c}
        if d_deg(w) < 1:
            continue
        cw = canonical(w)
        if cw != w:
            continue
        z = d_divide(apply_derivation(images, w), w)
        if z is None:
            continue
        found[frozen(w)] = (w, z)
    kept = {}
    for key, (w, z) in found.items():
        reducible = any(
            0 < d_deg(v) < d_deg(w) and d_divide(w, v) is not None for v, _ in found.values()
        )
        if not reducible:
            kept[key] = frozen(z)
    return kept

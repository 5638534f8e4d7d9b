"""Univariate helpers: interpolation, roots in the base field, squarefreeness.

Coefficient lists are low-degree first. Factorisation over F_p is delegated
to sympy's dense finite-field routines.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import sympy
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_factor, gf_gcd, gf_diff, gf_strip


def trim(coeffs: Sequence, field) -> list:
    out = [field(c) for c in coeffs]
    while out and field.is_zero(out[-1]):
        out.pop()
    return out


def interpolate(field, xs: Sequence, ys: Sequence) -> list:
    """Coefficients (low first) of the unique poly of degree < len(xs) through the points."""
    n = len(xs)
    xs = [field(x) for x in xs]
    coeffs = [field.zero] * n
    for i in range(n):
        # basis polynomial prod_{j != i} (x - x_j) / (x_i - x_j)
        basis = [field.one]
        denom = field.one
        for j in range(n):
            if j == i:
                continue
            basis = [field.reduce(a - xs[j] * b) for a, b in zip([field.zero] + basis, basis + [field.zero])]
            denom = field.reduce(denom * (xs[i] - xs[j]))
        scale = field.div(field(ys[i]), denom)
        coeffs = [field.reduce(c + scale * b) for c, b in zip(coeffs, basis)]
    return trim(coeffs, field)


def evaluate(field, coeffs: Sequence, x):
    acc = field.zero
    for c in reversed(coeffs):
        acc = field.reduce(acc * x + c)
    return acc


def _to_gf(coeffs: Sequence, p: int) -> list:
    return gf_strip([ZZ(int(c) % p) for c in reversed(list(coeffs))])


def roots_in_field(field, coeffs: Sequence) -> list:
    """Distinct roots lying in the field itself (sorted)."""
    coeffs = trim(coeffs, field)
    if len(coeffs) <= 1:
        if not coeffs:
            raise ValueError("the zero polynomial has every element as a root")
        return []
    if field.is_prime_field:
        _, factors = gf_factor(_to_gf(coeffs, field.p), field.p, ZZ)
        roots = []
        for fac, _ in factors:
            if len(fac) == 2:
                # monic linear factor x + c
                roots.append(int(-fac[1]) % field.p)
        return sorted(set(roots))
    t = sympy.Symbol("t")
    poly = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(coeffs)], t, domain="QQ")
    return sorted(Fraction(int(r.p), int(r.q)) for r in poly.ground_roots())


def is_squarefree(field, coeffs: Sequence) -> bool:
    """gcd(f, f') is constant."""
    coeffs = trim(coeffs, field)
    if not coeffs:
        return False
    if len(coeffs) <= 2:
        return True
    if field.is_prime_field:
        p = field.p
        f = _to_gf(coeffs, p)
        return len(gf_gcd(f, gf_diff(f, p, ZZ), p, ZZ)) == 1
    t = sympy.Symbol("t")
    poly = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(coeffs)], t, domain="QQ")
    return sympy.gcd(poly, poly.diff(t)).degree() == 0

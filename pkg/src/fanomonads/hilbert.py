"""Hilbert polynomials of instantons, of the bundles in their monads, and
the monad Euler characteristic."""

from __future__ import annotations

import sympy

from .models import GeometryTag

t = sympy.Symbol("t")


def _poly(expr) -> sympy.Poly:
    return sympy.Poly(sympy.expand(expr), t, domain="QQ")


def binom_poly(expr, r: int):
    """C(expr, r) as a polynomial in t."""
    out = sympy.Integer(1)
    for j in range(r):
        out *= expr - j
    return out / sympy.factorial(r)


def chi_instanton(geometry, k: int) -> sympy.Poly:
    """chi(E(t)); for V22 the argument is c2 (net parameter + 7)."""
    g = GeometryTag.of(geometry)
    if g.kind == "quadric":
        return _poly((t + 1) / 3 * (2 * t**2 + 4 * t - 3 * k + 3))
    if g.kind == "v5":
        d = g.degree
        return _poly((t + 1) / 3 * (d * t**2 + 2 * d * t - 3 * k + 6))
    gx = g.genus
    return _poly(t / 3 * ((2 * gx - 2) * t**2 - 3 * k + gx + 11))


def _chi_o(g: GeometryTag) -> sympy.Poly:
    if g.kind == "quadric":
        return _poly(binom_poly(t + 4, 4) - binom_poly(t + 2, 4))
    if g.kind == "v5":
        # cubic with leading term d t^3 / 6, chi(O) = 1, chi(O(-1)) = 0 and
        # chi(O(-2 - t)) = -chi(O(t))
        a, b, c = sympy.symbols("a b c")
        p = sympy.Rational(g.degree, 6) * t**3 + a * t**2 + b * t + c
        eqs = [p.subs(t, 0) - 1, p.subs(t, -1)]
        eqs += sympy.Poly(sympy.expand(p.subs(t, -2 - t) + p), t).all_coeffs()
        sol = sympy.solve(eqs, [a, b, c], dict=True)[0]
        return _poly(p.subs(sol))
    raise ValueError("bundle Euler characteristics on V22 are not available")


def _chi_spinor() -> sympy.Poly:
    """chi(S(t)) + chi(S(t+1)) = 4 chi(O(t)) with chi(S(-1)) = 0."""
    coeffs = sympy.symbols("s0:4")
    p = sum(c * t**i for i, c in enumerate(coeffs))
    rel = sympy.Poly(sympy.expand(p + p.subs(t, t + 1) - 4 * _chi_o(GeometryTag.of("quadric")).as_expr()), t)
    eqs = rel.all_coeffs() + [p.subs(t, -1)]
    sol = sympy.solve(eqs, coeffs, dict=True)[0]
    return _poly(p.subs(sol))


def _chi_tautological() -> sympy.Poly:
    """chi(U(t)) on V5 through its values at t = -2..1.

    U and U(-1) are acyclic, chi(U(1)) = chi(U*) = h^0(U*) = dim U = 5,
    and Serre duality with U* = U(1) gives chi(U(-2)) = -chi(U(1)).
    """
    return _poly(sympy.interpolate([(-2, -5), (-1, 0), (0, 0), (1, 5)], t))


BUNDLE_TAGS = {"quadric": ("O", "S"), "v5": ("O", "U", "U*")}


def chi_bundle(geometry, tag: str, twist=None):
    """chi of O, S (quadric) or U, U* (V5), twisted by ``twist``.

    Returns the polynomial in t when ``twist`` is None, else its value.
    """
    g = GeometryTag.of(geometry)
    if g.kind not in BUNDLE_TAGS:
        raise ValueError("bundle Euler characteristics on V22 are not available")
    if tag not in BUNDLE_TAGS[g.kind]:
        raise ValueError(f"unsupported bundle {tag!r} on {g.kind}; choose from {BUNDLE_TAGS[g.kind]}")
    if tag == "O":
        p = _chi_o(g)
    elif tag == "S":
        p = _chi_spinor()
    elif tag == "U":
        p = _chi_tautological()
    else:
        p = _poly(_chi_tautological().as_expr().subs(t, t + 1))
    if twist is None:
        return p
    return sympy.Rational(p.eval(twist))


def chi_monad(geometry, k: int) -> sympy.Poly:
    """dimW chi(E2(t)) - dimI (chi(E1(t)) + chi(E3(t)))."""
    g = GeometryTag.of(geometry)
    dim_i, dim_w = g.dim_i(k), g.dim_w(k)
    if g.kind == "quadric":
        # O(-1) -> S -> O
        o = chi_bundle(g, "O").as_expr()
        e1, e2, e3 = o.subs(t, t - 1), chi_bundle(g, "S").as_expr(), o
    elif g.kind == "v5":
        # U -> O -> U*
        e1, e2, e3 = chi_bundle(g, "U").as_expr(), chi_bundle(g, "O").as_expr(), chi_bundle(g, "U*").as_expr()
    else:
        raise ValueError("the monad Euler characteristic is only available for the quadric and V5")
    return _poly(dim_w * e2 - dim_i * (e1 + e3))


def poly_to_json(p: sympy.Poly) -> list[str]:
    """Coefficients, highest degree first, as exact rational strings."""
    return [str(c) for c in p.all_coeffs()]

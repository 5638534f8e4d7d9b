"""Jumping lines (quadric) and jumping conics (V22) as determinantal curves."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import sympy

from .exact import Matrix, MultiPoly, poly_det, rank
from .tensors import Net


@dataclass
class LinearFormMatrix:
    entries: list[list[MultiPoly]]

    def __post_init__(self):
        for row in self.entries:
            for e in row:
                if not e.is_zero() and (e.degree() != 1 or not e.is_homogeneous()):
                    raise ValueError("entries must be linear forms")

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    @property
    def field(self):
        return self.entries[0][0].field

    @property
    def nvars(self) -> int:
        return self.entries[0][0].nvars

    def evaluate(self, point) -> Matrix:
        f = self.field
        return Matrix._raw(f, [[e.evaluate(point) for e in row] for row in self.entries], self.rows, self.cols)

    def coefficient(self, r: int, c: int, var: int):
        exp = [0] * self.nvars
        exp[var] = 1
        return self.entries[r][c].coefficient(exp)

    def is_symmetric(self) -> bool:
        return all(self.entries[i][j] == self.entries[j][i] for i in range(self.rows) for j in range(self.cols))

    def to_json(self) -> list:
        return [[e.to_json() for e in row] for row in self.entries]


def jumping_lines_matrix(m) -> LinearFormMatrix:
    """B_E: entry (i, w) is sum_u A[i][w][u] x_u on P(U)."""
    if m.geometry.kind != "quadric":
        raise ValueError("jumping lines are defined for the quadric")
    a = m.a
    return LinearFormMatrix([[MultiPoly.linear_form(a.field, a.rows[i].row(w)) for w in range(a.dim_w)]
                             for i in range(a.dim_i)])


def maximal_minors(b: LinearFormMatrix) -> list[MultiPoly]:
    """Signed minors (-1)^c det(B without column c); B . minors = 0."""
    if b.rows != b.cols - 1:
        raise ValueError("need rows = cols - 1")
    out = []
    for c in range(b.cols):
        sub = [[row[j] for j in range(b.cols) if j != c] for row in b.entries]
        m = poly_det(sub) if sub else MultiPoly.constant(b.field, b.nvars, 1)
        out.append(-m if c % 2 else m)
    return out


def apply_to_minors(b: LinearFormMatrix, minors: list[MultiPoly]) -> list[MultiPoly]:
    out = []
    for row in b.entries:
        acc = MultiPoly.zero(b.field, b.nvars)
        for e, m in zip(row, minors):
            acc = acc + e * m
        out.append(acc)
    return out


def jumping_curve_chi(k: int) -> sympy.Poly:
    """chi(F(t)) for 0 -> O(-k) -> W* (x) O(-1) -> I (x) O -> F -> 0 on P^3."""
    t = sympy.Symbol("t")

    def c3(a):
        return (t + a) * (t + a - 1) * (t + a - 2) / 6

    return sympy.Poly(sympy.expand((k - 1) * c3(3) - k * c3(2) + c3(3 - k)), t, domain="QQ")


def jumping_curve_degree(k: int) -> int:
    chi = jumping_curve_chi(k)
    if chi.degree() > 1:
        raise ArithmeticError("the resolution does not describe a curve")
    lead = chi.coeff_monomial(chi.gens[0])
    if lead.q != 1:
        raise ArithmeticError("non-integral degree")
    return int(lead)


def expected_curve_degree(k: int) -> int:
    return comb(k, 2)


def point_is_jumping(m, u) -> bool:
    """rank B_E(u) <= k - 2."""
    return rank(jumping_lines_matrix(m).evaluate(u)) <= m.k - 2


def jumping_conics_matrix(n: Net) -> LinearFormMatrix:
    """M_E: the net itself as a symmetric k x k matrix of linear forms on P(B*)."""
    if n.geometry != "v22":
        raise ValueError("jumping conics are defined for V22 nets")
    return LinearFormMatrix([[MultiPoly.linear_form(n.field, n.coeffs[i][j]) for j in range(n.k)]
                             for i in range(n.k)])


def jumping_conics_curve(n: Net) -> MultiPoly:
    """det(M_E); zero means the splitting is not generic."""
    return poly_det(jumping_conics_matrix(n).entries)

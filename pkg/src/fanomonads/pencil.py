"""Pencils of quadrics in P^5 and the branch sextic of the associated genus-2 curve."""

from __future__ import annotations

from dataclasses import dataclass

from .exact import Matrix, MultiPoly, poly_det, rank
from .exact.univariate import is_squarefree, roots_in_field


@dataclass(frozen=True)
class Pencil:
    q1: Matrix
    q2: Matrix

    def __post_init__(self):
        for q in (self.q1, self.q2):
            if q.shape != (6, 6) or not q.is_symmetric():
                raise ValueError("pencil members must be symmetric 6 x 6 matrices")
        f = self.q1.field
        flat = Matrix(f, [[x for r in q.data for x in r] for q in (self.q1, self.q2)])
        if rank(flat) < 2:
            raise ValueError("pencil members are proportional")

    @property
    def field(self):
        return self.q1.field

    def congruent(self, g: Matrix) -> "Pencil":
        return Pencil(g.T @ self.q1 @ g, g.T @ self.q2 @ g)


def branch_sextic(p: Pencil) -> MultiPoly:
    """det(lambda Q1 + mu Q2) as a binary form."""
    f = p.field
    lam, mu = MultiPoly.var(f, 2, 0), MultiPoly.var(f, 2, 1)
    entries = [[lam * p.q1[i, j] + mu * p.q2[i, j] for j in range(6)] for i in range(6)]
    return poly_det(entries)


def dehomogenize(sextic: MultiPoly) -> list:
    """Coefficients (low first) of sextic(lambda, 1)."""
    f = sextic.field
    out = [f.zero] * 7
    for (a, _b), c in sextic.terms.items():
        out[a] = f.add(out[a], c)
    while out and f.is_zero(out[-1]):
        out.pop()
    return out


def is_smooth_pencil(p: Pencil) -> bool:
    """Six distinct degenerate members: the sextic has degree 6 and no repeated factor."""
    s = branch_sextic(p)
    if s.is_zero() or s.degree() != 6:
        return False
    f = dehomogenize(s)
    # degree 6 - deg f is the multiplicity of the root at mu-infinity
    if len(f) - 1 < 5:
        return False
    return is_squarefree(p.field, f)


def branch_points(p: Pencil) -> list:
    """Degenerate members [lambda : mu] with coordinates in the base field."""
    s = branch_sextic(p)
    f = dehomogenize(s)
    pts = [(r, p.field.one) for r in roots_in_field(p.field, f)] if len(f) > 1 else []
    if len(f) - 1 < 6:
        pts.append((p.field.one, p.field.zero))
    return pts


def sextic_coefficients(s: MultiPoly) -> list:
    """Coefficient of lambda^(6-i) mu^i for i = 0..6."""
    return [s.coefficient((6 - i, i)) for i in range(7)]

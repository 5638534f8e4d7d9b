"""Sparse multivariate polynomials over an exact field, and determinants of
polynomial matrices."""

from __future__ import annotations

import itertools
import random
from typing import Mapping, Sequence

from .matrix import Matrix, rref


def _grlex_key(exp: tuple[int, ...]):
    return (sum(exp), exp)


class MultiPoly:
    """Polynomial in ``nvars`` variables stored as {exponent tuple: coeff}.

    Zero coefficients are never stored, so two polynomials are equal iff
    their term dicts are equal.
    """

    __slots__ = ("field", "nvars", "terms")

    def __init__(self, field, nvars: int, terms: Mapping[tuple[int, ...], object] | None = None):
        self.field = field
        self.nvars = nvars
        self.terms: dict[tuple[int, ...], object] = {}
        for exp, c in (terms or {}).items():
            exp = tuple(exp)
            if len(exp) != nvars:
                raise ValueError("exponent length does not match nvars")
            c = field(c)
            if not field.is_zero(c):
                self.terms[exp] = c

    @classmethod
    def _raw(cls, field, nvars, terms):
        p = cls.__new__(cls)
        p.field, p.nvars, p.terms = field, nvars, terms
        return p

    @classmethod
    def zero(cls, field, nvars: int) -> "MultiPoly":
        return cls._raw(field, nvars, {})

    @classmethod
    def constant(cls, field, nvars: int, c) -> "MultiPoly":
        return cls(field, nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, field, nvars: int, i: int) -> "MultiPoly":
        exp = [0] * nvars
        exp[i] = 1
        return cls(field, nvars, {tuple(exp): 1})

    @classmethod
    def linear_form(cls, field, coeffs: Sequence) -> "MultiPoly":
        """sum_u coeffs[u] * x_u"""
        n = len(coeffs)
        terms = {}
        for u, c in enumerate(coeffs):
            exp = [0] * n
            exp[u] = 1
            terms[tuple(exp)] = c
        return cls(field, n, terms)

    def copy(self) -> "MultiPoly":
        return MultiPoly._raw(self.field, self.nvars, dict(self.terms))

    def is_zero(self) -> bool:
        return not self.terms

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars:
                raise ValueError("variable count mismatch")
            return other
        return MultiPoly.constant(self.field, self.nvars, other)

    def __add__(self, other) -> "MultiPoly":
        other = self._coerce(other)
        f = self.field
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = f.reduce(terms.get(e, f.zero) + c)
            if f.is_zero(s):
                terms.pop(e, None)
            else:
                terms[e] = s
        return MultiPoly._raw(f, self.nvars, terms)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        f = self.field
        return MultiPoly._raw(f, self.nvars, {e: f.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other) -> "MultiPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "MultiPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "MultiPoly":
        f = self.field
        if not isinstance(other, MultiPoly):
            c = f(other)
            if f.is_zero(c):
                return MultiPoly.zero(f, self.nvars)
            return MultiPoly._raw(f, self.nvars, {e: f.reduce(a * c) for e, a in self.terms.items()})
        other = self._coerce(other)
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        out = {}
        for e, c in terms.items():
            c = f.reduce(c)
            if not f.is_zero(c):
                out[e] = c
        return MultiPoly._raw(f, self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MultiPoly":
        out = MultiPoly.constant(self.field, self.nvars, 1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiPoly):
            return self == self._coerce(other)
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, tuple(self.sorted_terms())))

    def sorted_terms(self) -> list[tuple[tuple[int, ...], object]]:
        """Terms in descending graded-lex order."""
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def coefficient(self, exp: Sequence[int]):
        return self.terms.get(tuple(exp), self.field.zero)

    def __call__(self, point: Sequence):
        return self.evaluate(point)

    def evaluate(self, point: Sequence):
        f = self.field
        point = [f(x) for x in point]
        total = 0
        for e, c in self.terms.items():
            t = c
            for x, k in zip(point, e):
                if k:
                    t = t * x**k
            total += t
        return f.reduce(f(total) if not f.is_prime_field else total)

    def derivative(self, i: int) -> "MultiPoly":
        terms = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                terms[tuple(ne)] = c * e[i]
        return MultiPoly(self.field, self.nvars, terms)

    def substitute(self, values: Sequence["MultiPoly"]) -> "MultiPoly":
        """Replace x_i by values[i] (all in a common ring)."""
        out = None
        for e, c in self.terms.items():
            t = values[0] * 0 + c if values else None
            for v, k in zip(values, e):
                if k:
                    t = t * v**k
            out = t if out is None else out + t
        if out is None:
            nv = values[0].nvars if values else 0
            return MultiPoly.zero(self.field, nv)
        return out

    def to_json(self) -> dict:
        return {
            "nvars": self.nvars,
            "degree": self.degree(),
            "terms": [[list(e), self.field.to_json(c)] for e, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, field, doc: Mapping) -> "MultiPoly":
        return cls(field, doc["nvars"], {tuple(e): field.from_json(c) for e, c in doc["terms"]})

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(f"x{i}^{k}" if k > 1 else f"x{i}" for i, k in enumerate(e) if k)
            parts.append(f"{c}*{mono}" if mono else f"{c}")
        return " + ".join(parts)


def monomials(nvars: int, degree: int) -> list[tuple[int, ...]]:
    """All exponent vectors of the given total degree."""
    if nvars == 0:
        return [()] if degree == 0 else []
    out = []
    for first in range(degree, -1, -1):
        for rest in monomials(nvars - 1, degree - first):
            out.append((first,) + rest)
    return out


def _check_square(m: Sequence[Sequence[MultiPoly]]) -> tuple[object, int, int]:
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("poly_det needs a square matrix")
    if n == 0:
        raise ValueError("empty matrix")
    entry = m[0][0]
    nv = entry.nvars
    if any(e.nvars != nv for row in m for e in row):
        raise ValueError("entries must share the variable count")
    return entry.field, nv, n


def _det_expansion(m: Sequence[Sequence[MultiPoly]]) -> MultiPoly:
    """Laplace expansion along rows with memoised column-subset minors."""
    field, nv, n = _check_square(m)
    minors: dict[tuple[int, ...], MultiPoly] = {(): MultiPoly.constant(field, nv, 1)}
    for r in range(n):
        nxt: dict[tuple[int, ...], MultiPoly] = {}
        for cols in itertools.combinations(range(n), r + 1):
            acc = MultiPoly.zero(field, nv)
            for pos, c in enumerate(cols):
                entry = m[r][c]
                if entry.is_zero():
                    continue
                sub = minors[cols[:pos] + cols[pos + 1:]]
                if sub.is_zero():
                    continue
                term = entry * sub
                acc = acc - term if (r + pos) % 2 else acc + term
            # sign convention: expanding the last row of the r+1 x r+1 minor
            nxt[cols] = acc
        minors = nxt
    return minors[tuple(range(n))]


def _det_interpolation(m: Sequence[Sequence[MultiPoly]], rng: random.Random | None = None) -> MultiPoly | None:
    """Evaluate at random points and solve for the coefficients."""
    from .matrix import det

    field, nv, n = _check_square(m)
    rng = rng or random.Random(0x5EED)
    row_degs = [max((e.degree() for e in row), default=0) for row in m]
    bound = sum(max(d, 0) for d in row_degs)
    homogeneous = all(e.is_homogeneous() for row in m for e in row)
    entry_degs = {e.degree() for row in m for e in row if not e.is_zero()}
    if homogeneous and len(entry_degs) == 1:
        monos = monomials(nv, n * entry_degs.pop())
    else:
        monos = [mo for d in range(bound + 1) for mo in monomials(nv, d)]
    if not monos:
        return MultiPoly.zero(field, nv)
    npts = len(monos) + 8
    if field.size is not None and field.size ** nv < 4 * npts:
        return None
    rows = []
    for _ in range(npts):
        pt = [field.random(rng) for _ in range(nv)]
        val = det(Matrix._raw(field, [[e.evaluate(pt) for e in row] for row in m], n, n))
        powers = []
        for mo in monos:
            t = field.one
            for x, k in zip(pt, mo):
                t = field.reduce(t * field(x) ** k) if k else t
            powers.append(t)
        rows.append(powers + [val])
    R, pivots = rref(Matrix._raw(field, rows, npts, len(monos) + 1))
    if pivots != list(range(len(monos))):
        return None
    return MultiPoly(field, nv, {mo: R.data[i][len(monos)] for i, mo in enumerate(monos)})


def poly_det(m: Sequence[Sequence[MultiPoly]]) -> MultiPoly:
    """Exact determinant of a square matrix of polynomials.

    Expansion for n <= 6, evaluation/interpolation beyond (falls back to
    expansion when the field is too small to interpolate reliably).
    """
    _, _, n = _check_square(m)
    if n <= 6:
        return _det_expansion(m)
    out = _det_interpolation(m)
    return out if out is not None else _det_expansion(m)


def poly_matrix_eval(m: Sequence[Sequence[MultiPoly]], point: Sequence) -> Matrix:
    field = m[0][0].field
    return Matrix._raw(field, [[e.evaluate(point) for e in row] for row in m], len(m), len(m[0]))


def linear_combination_matrix(field, mats: Sequence[Matrix], nvars: int | None = None) -> list[list[MultiPoly]]:
    """The matrix sum_b y_b * mats[b] with entries linear forms in y."""
    nv = nvars if nvars is not None else len(mats)
    r, c = mats[0].shape
    return [[MultiPoly.linear_form(field, [mats[b][i, j] for b in range(len(mats))] + [0] * (nv - len(mats)))
             for j in range(c)] for i in range(r)]

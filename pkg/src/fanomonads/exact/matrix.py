"""Dense matrices over an exact field and the usual elimination kernels.

All routines are exact: Gaussian elimination over F_p, fraction-free
Bareiss elimination for determinants over Q.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from typing import Iterable, Sequence


class Matrix:
    """Row-major dense matrix with entries in ``field``."""

    __slots__ = ("field", "rows", "cols", "data")

    def __init__(self, field, data: Sequence[Sequence], cols: int | None = None):
        self.field = field
        self.data = [[field(x) for x in row] for row in data]
        self.rows = len(self.data)
        if cols is None:
            cols = len(self.data[0]) if self.data else 0
        self.cols = cols
        for row in self.data:
            if len(row) != cols:
                raise ValueError("ragged matrix data")

    @classmethod
    def _raw(cls, field, data, rows, cols):
        m = cls.__new__(cls)
        m.field, m.data, m.rows, m.cols = field, data, rows, cols
        return m

    @classmethod
    def zeros(cls, field, rows: int, cols: int) -> "Matrix":
        return cls._raw(field, [[field.zero] * cols for _ in range(rows)], rows, cols)

    @classmethod
    def identity(cls, field, n: int) -> "Matrix":
        m = cls.zeros(field, n, n)
        for i in range(n):
            m.data[i][i] = field.one
        return m

    @classmethod
    def random(cls, field, rows: int, cols: int, rng: random.Random) -> "Matrix":
        return cls._raw(field, [[field.random(rng) for _ in range(cols)] for _ in range(rows)], rows, cols)

    @classmethod
    def from_columns(cls, field, columns: Sequence[Sequence], rows: int | None = None) -> "Matrix":
        if not columns:
            return cls.zeros(field, rows or 0, 0)
        return cls(field, [list(c) for c in columns]).T

    @classmethod
    def diag(cls, field, values: Sequence) -> "Matrix":
        m = cls.zeros(field, len(values), len(values))
        for i, v in enumerate(values):
            m.data[i][i] = field(v)
        return m

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def __setitem__(self, ij, value):
        i, j = ij
        self.data[i][j] = self.field(value)

    def copy(self) -> "Matrix":
        return Matrix._raw(self.field, [row[:] for row in self.data], self.rows, self.cols)

    @property
    def T(self) -> "Matrix":
        data = [list(col) for col in zip(*self.data)] if self.rows else [[] for _ in range(self.cols)]
        return Matrix._raw(self.field, data, self.cols, self.rows)

    def row(self, i: int) -> list:
        return self.data[i][:]

    def col(self, j: int) -> list:
        return [row[j] for row in self.data]

    def columns(self) -> list[list]:
        return [self.col(j) for j in range(self.cols)]

    def submatrix(self, rows: Iterable[int], cols: Iterable[int]) -> "Matrix":
        rows, cols = list(rows), list(cols)
        data = [[self.data[i][j] for j in cols] for i in rows]
        return Matrix._raw(self.field, data, len(rows), len(cols))

    def hstack(self, other: "Matrix") -> "Matrix":
        assert self.rows == other.rows
        data = [a + b for a, b in zip(self.data, other.data)]
        return Matrix._raw(self.field, data, self.rows, self.cols + other.cols)

    def vstack(self, other: "Matrix") -> "Matrix":
        assert self.cols == other.cols
        data = [r[:] for r in self.data] + [r[:] for r in other.data]
        return Matrix._raw(self.field, data, self.rows + other.rows, self.cols)

    def _check_same(self, other: "Matrix"):
        if not isinstance(other, Matrix) or self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {getattr(other, 'shape', None)}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        red = self.field.reduce
        data = [[red(a + b) for a, b in zip(r, s)] for r, s in zip(self.data, other.data)]
        return Matrix._raw(self.field, data, self.rows, self.cols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        red = self.field.reduce
        data = [[red(a - b) for a, b in zip(r, s)] for r, s in zip(self.data, other.data)]
        return Matrix._raw(self.field, data, self.rows, self.cols)

    def __neg__(self) -> "Matrix":
        return self.scale(-1)

    def scale(self, c) -> "Matrix":
        c = self.field(c)
        red = self.field.reduce
        data = [[red(c * a) for a in r] for r in self.data]
        return Matrix._raw(self.field, data, self.rows, self.cols)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        red = self.field.reduce
        ocols = list(zip(*other.data)) if other.rows else [() for _ in range(other.cols)]
        data = [[red(sum(a * b for a, b in zip(r, c))) for c in ocols] for r in self.data]
        return Matrix._raw(self.field, data, self.rows, other.cols)

    def apply(self, vec: Sequence) -> list:
        red = self.field.reduce
        return [red(sum(a * b for a, b in zip(r, vec))) for r in self.data]

    def __eq__(self, other) -> bool:
        return isinstance(other, Matrix) and self.shape == other.shape and self.data == other.data

    def __repr__(self) -> str:
        return f"Matrix({self.rows}x{self.cols}, {self.data!r})"

    def is_zero(self) -> bool:
        return all(self.field.is_zero(a) for r in self.data for a in r)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_symmetric(self) -> bool:
        return self.is_square() and self == self.T

    def is_skew(self) -> bool:
        return self.is_square() and self == -self.T

    def tolist(self) -> list[list]:
        return [[self.field.to_json(a) for a in r] for r in self.data]

    # convenience wrappers
    def rank(self) -> int:
        return rank(self)

    def det(self):
        return det(self)

    def kernel(self) -> "Matrix":
        return kernel_basis(self)

    def inverse(self) -> "Matrix":
        return inverse(self)


def _rref_rows(field, data: list[list], ncols: int) -> tuple[list[list], list[int]]:
    """In-place reduced row echelon form; returns (rows, pivot columns)."""
    red = field.reduce
    pivots: list[int] = []
    r = 0
    nrows = len(data)
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if not field.is_zero(data[i][c])), None)
        if piv is None:
            continue
        data[r], data[piv] = data[piv], data[r]
        inv = field.inv(data[r][c])
        prow = [red(x * inv) for x in data[r]]
        data[r] = prow
        for i in range(nrows):
            if i != r:
                f = data[i][c]
                if not field.is_zero(f):
                    row = data[i]
                    data[i] = [red(a - f * b) for a, b in zip(row, prow)]
        pivots.append(c)
        r += 1
    return data, pivots


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot column indices."""
    data, pivots = _rref_rows(m.field, [row[:] for row in m.data], m.cols)
    return Matrix._raw(m.field, data, m.rows, m.cols), pivots


def rank(m: Matrix) -> int:
    """Rank by exact Gaussian elimination (row echelon, no back-substitution)."""
    field = m.field
    red = field.reduce
    data = [row[:] for row in m.data]
    r = 0
    for c in range(m.cols):
        piv = next((i for i in range(r, m.rows) if not field.is_zero(data[i][c])), None)
        if piv is None:
            continue
        data[r], data[piv] = data[piv], data[r]
        inv = field.inv(data[r][c])
        prow = data[r]
        for i in range(r + 1, m.rows):
            f = data[i][c]
            if not field.is_zero(f):
                f = f * inv
                data[i] = [red(a - f * b) for a, b in zip(data[i], prow)]
        r += 1
        if r == m.rows:
            break
    return r


def kernel_basis(m: Matrix) -> Matrix:
    """Columns form a basis of the right kernel {x : m x = 0}."""
    field = m.field
    R, pivots = rref(m)
    free = [c for c in range(m.cols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [field.zero] * m.cols
        v[f] = field.one
        for r, pc in enumerate(pivots):
            v[pc] = field.neg(R.data[r][f])
        basis.append(v)
    if not basis:
        return Matrix.zeros(field, m.cols, 0)
    return Matrix.from_columns(field, basis)


def left_kernel_basis(m: Matrix) -> Matrix:
    """Rows form a basis of {y : y m = 0}."""
    return kernel_basis(m.T).T


def column_space_basis(m: Matrix) -> tuple[Matrix, list[int]]:
    """A column basis made of original columns, with their indices."""
    _, pivots = rref(m)
    return m.submatrix(range(m.rows), pivots), pivots


def solve(m: Matrix, b: Sequence) -> list | None:
    """One solution x of m x = b, or None if inconsistent."""
    field = m.field
    aug = Matrix._raw(field, [row[:] + [field(v)] for row, v in zip(m.data, b)], m.rows, m.cols + 1)
    R, pivots = rref(aug)
    if pivots and pivots[-1] == m.cols:
        return None
    x = [field.zero] * m.cols
    for r, pc in enumerate(pivots):
        x[pc] = R.data[r][m.cols]
    return x


def inverse(m: Matrix) -> Matrix:
    if not m.is_square():
        raise ValueError("inverse of a non-square matrix")
    n = m.rows
    aug = m.hstack(Matrix.identity(m.field, n))
    R, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return R.submatrix(range(n), range(n, 2 * n))


def _det_mod_p(field, data: list[list]) -> int:
    p = field.p
    n = len(data)
    data = [row[:] for row in data]
    d = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if data[i][c] % p), None)
        if piv is None:
            return 0
        if piv != c:
            data[c], data[piv] = data[piv], data[c]
            d = -d
        pv = data[c][c]
        d = d * pv % p
        inv = pow(pv, -1, p)
        prow = data[c]
        for i in range(c + 1, n):
            f = data[i][c]
            if f:
                f = f * inv % p
                data[i] = [(a - f * b) % p for a, b in zip(data[i], prow)]
    return d % p


def bareiss_det_int(data: list[list[int]]) -> int:
    """Fraction-free Bareiss determinant of an integer matrix."""
    n = len(data)
    if n == 0:
        return 1
    a = [row[:] for row in data]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if piv is None:
                return 0
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def det(m: Matrix):
    """Exact determinant; Bareiss over Q after clearing denominators."""
    if not m.is_square():
        raise ValueError("determinant of a non-square matrix")
    field = m.field
    if m.rows == 0:
        return field.one
    if field.is_prime_field:
        return _det_mod_p(field, m.data)
    scale = 1
    rows = []
    for row in m.data:
        l = math.lcm(*(Fraction(x).denominator for x in row))
        scale *= l
        rows.append([int(Fraction(x) * l) for x in row])
    return Fraction(bareiss_det_int(rows), scale)


def pfaffian(m: Matrix):
    """Pfaffian of a skew-symmetric matrix by skew Gaussian elimination."""
    if not m.is_square():
        raise ValueError("pfaffian of a non-square matrix")
    if not m.is_skew():
        raise ValueError("pfaffian needs a skew-symmetric matrix")
    field = m.field
    n = m.rows
    if n % 2:
        return field.zero
    red = field.reduce
    a = [row[:] for row in m.data]
    result = field.one
    while a:
        size = len(a)
        j = next((j for j in range(1, size) if not field.is_zero(a[0][j])), None)
        if j is None:
            return field.zero
        if j != 1:
            # simultaneous swap of rows/cols 1 and j flips the sign
            a[1], a[j] = a[j], a[1]
            for row in a:
                row[1], row[j] = row[j], row[1]
            result = field.neg(result)
        piv = a[0][1]
        result = red(result * piv)
        inv = field.inv(piv)
        u = [a[0][i] for i in range(2, size)]
        v = [a[1][i] for i in range(2, size)]
        # Schur complement: C + (v u^T - u v^T) / piv, with u, v the (0, *) and (1, *) rows
        rest = []
        for r in range(2, size):
            vr, ur = v[r - 2], u[r - 2]
            rest.append([red(a[r][c] + (vr * u[c - 2] - ur * v[c - 2]) * inv) for c in range(2, size)])
        a = rest
    return result

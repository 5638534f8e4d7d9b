"""Tensor spaces I (x) W (x) U, the spin splitting of wedge^2 U, and nets.

Basis conventions (fixed once, used for serialisation):

* U has basis e_0..e_{n-1}.
* wedge^2 U has basis e_i ^ e_j for i < j in lexicographic order.
* S^2 U has basis e_i e_j for i <= j in lexicographic order; the Gram
  matrix of e_i e_j (i != j) carries 1/2 in positions (i, j) and (j, i).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from math import comb

from .exact import Matrix, kernel_basis, rank
from .exact.matrix import solve


def wedge2_basis(n: int) -> list[tuple[int, int]]:
    return list(itertools.combinations(range(n), 2))


def sym2_basis(n: int) -> list[tuple[int, int]]:
    return list(itertools.combinations_with_replacement(range(n), 2))


def wedge2_gram(field, n: int, i: int, j: int) -> Matrix:
    """Skew Gram matrix of e_i ^ e_j."""
    m = Matrix.zeros(field, n, n)
    m[i, j] = 1
    m[j, i] = -1
    return m


def sym2_gram(field, n: int, i: int, j: int) -> Matrix:
    """Symmetric Gram matrix of e_i e_j, with 1/2 off the diagonal."""
    m = Matrix.zeros(field, n, n)
    if i == j:
        m[i, i] = 1
    else:
        half = field.inv(field(2))
        m[i, j] = half
        m[j, i] = half
    return m


def alternation(field, c: Matrix) -> list:
    """Coordinates in wedge^2 U of the skew part of c in U (x) U."""
    n = c.rows
    return [field.sub(c[i, j], c[j, i]) for i, j in wedge2_basis(n)]


def wedge_pairing(field, v: list, w: list) -> object:
    """Coefficient of e_0^e_1^e_2^e_3 in v ^ w for v, w in wedge^2 of a 4-space."""
    idx = {p: k for k, p in enumerate(wedge2_basis(4))}
    total = 0
    for (a, b), (c, d) in itertools.product(idx, idx):
        if len({a, b, c, d}) < 4:
            continue
        perm = [a, b, c, d]
        inv = sum(1 for x, y in itertools.combinations(perm, 2) if x > y)
        sign = -1 if inv % 2 else 1
        total += sign * v[idx[(a, b)]] * w[idx[(c, d)]]
    return field(total)


# --------------------------------------------------------------------------
# spin splitting wedge^2 U = V + <omega>


@dataclass(frozen=True)
class SpinSplit:
    field: object
    omega: list  # coordinates of omega in wedge^2 U
    omega_gram: Matrix  # the symplectic form omega(u, v) on U
    v_basis: Matrix  # 6 x 5, columns span V
    p_v: Matrix  # 5 x 6, coordinates in v_basis of the V-component
    p_omega: Matrix  # 1 x 6, coefficient of omega

    @property
    def dim_v(self) -> int:
        return self.v_basis.cols

    def project_v(self, x: list) -> list:
        return self.p_v.apply(x)

    def omega_form(self, u: list, v: list):
        return self.field.reduce(sum(a * b for a, b in zip(u, self.omega_gram.apply(v))))

    def quadratic_form_gram(self) -> Matrix:
        """Gram matrix on V of q(v) = coefficient of v ^ v in wedge^4 U."""
        cols = self.v_basis.columns()
        return Matrix(self.field, [[wedge_pairing(self.field, a, b) for b in cols] for a in cols])


def build_spin_split(field) -> SpinSplit:
    """omega = e_0^e_2 + e_1^e_3 and V = {v : v ^ omega = 0}."""
    if field.characteristic == 2:
        raise ValueError("characteristic 2 is not supported")
    basis = wedge2_basis(4)
    omega = [field.zero] * 6
    omega[basis.index((0, 2))] = field.one
    omega[basis.index((1, 3))] = field.one
    gram = wedge2_gram(field, 4, 0, 2) + wedge2_gram(field, 4, 1, 3)
    # v ^ omega as a linear functional on wedge^2 U
    functional = Matrix(field, [[wedge_pairing(field, e, omega) for e in Matrix.identity(field, 6).data]])
    v_basis = kernel_basis(functional)
    s = wedge_pairing(field, omega, omega)
    # x = p_V(x) + (x ^ omega / omega ^ omega) omega, since V ^ omega = 0
    p_omega = functional.scale(field.inv(s))
    full = v_basis.hstack(Matrix.from_columns(field, [omega]))
    inv = full.inverse()
    p_v = inv.submatrix(range(5), range(6))
    # sanity: the two descriptions of the omega coefficient agree
    assert inv.submatrix([5], range(6)) == p_omega
    return SpinSplit(field, omega, gram, v_basis, p_v, p_omega)


# --------------------------------------------------------------------------
# Tensor3 and dualities


@dataclass
class Tensor3:
    """A in I (x) W (x) U stored as one dimW x dimU matrix per I-index."""

    field: object
    rows: list[Matrix]

    @property
    def dim_i(self) -> int:
        return len(self.rows)

    @property
    def dim_w(self) -> int:
        return self.rows[0].rows if self.rows else 0

    @property
    def dim_u(self) -> int:
        return self.rows[0].cols if self.rows else 0

    def __getitem__(self, iwu):
        i, w, u = iwu
        return self.rows[i][w, u]

    @classmethod
    def zeros(cls, field, dim_i: int, dim_w: int, dim_u: int) -> "Tensor3":
        return cls(field, [Matrix.zeros(field, dim_w, dim_u) for _ in range(dim_i)])

    @classmethod
    def from_vector(cls, field, vec: list, dim_i: int, dim_w: int, dim_u: int) -> "Tensor3":
        rows = []
        for i in range(dim_i):
            block = vec[i * dim_w * dim_u:(i + 1) * dim_w * dim_u]
            rows.append(Matrix(field, [block[w * dim_u:(w + 1) * dim_u] for w in range(dim_w)]))
        return cls(field, rows)

    def to_vector(self) -> list:
        return [x for m in self.rows for r in m.data for x in r]

    def to_nested(self) -> list:
        return [m.tolist() for m in self.rows]

    @classmethod
    def from_nested(cls, field, nested: list) -> "Tensor3":
        return cls(field, [Matrix(field, [[field.from_json(x) for x in r] for r in m]) for m in nested])

    def flatten_iu_w(self) -> Matrix:
        """The (dimI*dimU) x dimW matrix with rows indexed by (i, u)."""
        f = self.field
        data = []
        for m in self.rows:
            t = m.T
            data.extend(t.data)
        return Matrix(f, data) if data else Matrix.zeros(f, 0, self.dim_w)

    @classmethod
    def from_iu_w(cls, field, c: Matrix, dim_i: int, dim_u: int) -> "Tensor3":
        rows = []
        for i in range(dim_i):
            rows.append(c.submatrix(range(i * dim_u, (i + 1) * dim_u), range(c.cols)).T)
        return cls(field, rows)

    def __eq__(self, other) -> bool:
        return isinstance(other, Tensor3) and self.rows == other.rows


@dataclass(frozen=True)
class Duality:
    matrix: Matrix
    parity: str  # "symmetric" or "skew"

    def __post_init__(self):
        m = self.matrix
        if self.parity not in ("symmetric", "skew"):
            raise ValueError(f"bad parity {self.parity}")
        ok = m.is_symmetric() if self.parity == "symmetric" else m.is_skew()
        if not ok:
            raise ValueError(f"duality matrix is not {self.parity}")
        if rank(m) != m.rows:
            raise ValueError("duality matrix is singular")

    @property
    def dim(self) -> int:
        return self.matrix.rows


def contract_rows(a_i: Matrix, d: Matrix, a_j: Matrix) -> Matrix:
    """c_ij = sum_{w,w'} D_{w w'} a_i^{(w)} (x) a_j^{(w')} as a dimU x dimU matrix."""
    return a_i.T @ d @ a_j


def quadric_condition_count(k: int) -> int:
    return 5 * comb(k - 1, 2)


def pair_condition(spin: SpinSplit, a_i: Matrix, d: Matrix, a_j: Matrix) -> list:
    return spin.project_v(alternation(spin.field, contract_rows(a_i, d, a_j)))


def project_condition(a: Tensor3, d: Duality, geometry, spin: SpinSplit | None = None) -> list:
    """Coordinates of A D A^t in its obstruction component.

    For the quadric this is the wedge^2 I (x) V part, 5 * C(k-1, 2) numbers,
    listed pair by pair (i < j). For net-derived geometries the condition
    is structural and the result is empty.
    """
    from .models import GeometryTag

    geometry = GeometryTag.of(geometry)
    if geometry.kind != "quadric":
        return []
    if a.dim_u != 4 or a.dim_w != d.dim:
        raise ValueError("dimension mismatch with the quadric table")
    if d.parity != "symmetric":
        raise ValueError("the quadric needs a symmetric duality")
    spin = spin or build_spin_split(a.field)
    out = []
    for i, j in itertools.combinations(range(a.dim_i), 2):
        out.extend(pair_condition(spin, a.rows[i], d.matrix, a.rows[j]))
    return out


# --------------------------------------------------------------------------
# nets of quadrics


@dataclass
class Net:
    """Element of S^2 I (x) B: c[i][j][b] with c[i][j] == c[j][i].

    ``grams`` are the images of the B-basis in wedge^2 U (skew, V5) or
    S^2 U (symmetric, V22).
    """

    field: object
    geometry: str
    coeffs: list  # k x k x dimB
    grams: list[Matrix] = dc_field(repr=False)

    def __post_init__(self):
        k = len(self.coeffs)
        for i in range(k):
            for j in range(k):
                if self.coeffs[i][j] != self.coeffs[j][i]:
                    raise ValueError("net coefficients must be symmetric in (i, j)")

    @property
    def k(self) -> int:
        return len(self.coeffs)

    @property
    def dim_b(self) -> int:
        return len(self.grams)

    @property
    def dim_u(self) -> int:
        return self.grams[0].rows

    @property
    def parity(self) -> str:
        return "skew" if self.geometry == "v5" else "symmetric"

    def coefficient_matrix(self, b: int) -> Matrix:
        """The symmetric k x k matrix c[.][.][b]."""
        return Matrix(self.field, [[self.coeffs[i][j][b] for j in range(self.k)] for i in range(self.k)])

    def coordinates(self) -> list:
        """Independent coordinates, ordered by (i <= j, b)."""
        return [self.coeffs[i][j][b] for i, j in sym2_basis(self.k) for b in range(self.dim_b)]

    @classmethod
    def from_coordinates(cls, field, geometry: str, k: int, grams: list[Matrix], coords: list) -> "Net":
        nb = len(grams)
        c = [[[field.zero] * nb for _ in range(k)] for _ in range(k)]
        for n, (i, j) in enumerate(sym2_basis(k)):
            for b in range(nb):
                c[i][j][b] = c[j][i][b] = field(coords[n * nb + b])
        return cls(field, geometry, c, grams)

    @classmethod
    def from_matrices(cls, field, geometry: str, mats: list[Matrix], grams: list[Matrix]) -> "Net":
        k = mats[0].rows
        c = [[[mats[b][i, j] for b in range(len(mats))] for j in range(k)] for i in range(k)]
        return cls(field, geometry, c, grams)

    def to_json(self) -> dict:
        f = self.field
        return {
            "geometry": self.geometry,
            "k": self.k,
            "B_gram": [g.tolist() for g in self.grams],
            "coefficients": [[[f.to_json(x) for x in cb] for cb in row] for row in self.coeffs],
        }

    @classmethod
    def from_json(cls, field, doc: dict) -> "Net":
        grams = [Matrix(field, [[field.from_json(x) for x in r] for r in g]) for g in doc["B_gram"]]
        coeffs = [[[field.from_json(x) for x in cb] for cb in row] for row in doc["coefficients"]]
        return cls(field, doc["geometry"], coeffs, grams)


def net_dimension(k: int, dim_b: int = 3) -> int:
    return comb(k + 1, 2) * dim_b


def ambient(n: Net) -> Matrix:
    """The (k dimU) x (k dimU) matrix of the embedded bilinear form.

    Block (i, j) is sum_b c[i][j][b] * gram_b; rows/cols indexed by (i, u).
    """
    f = n.field
    k, du = n.k, n.dim_u
    m = Matrix.zeros(f, k * du, k * du)
    for i in range(k):
        for j in range(k):
            for b, g in enumerate(n.grams):
                c = n.coeffs[i][j][b]
                if f.is_zero(c):
                    continue
                for u in range(du):
                    row = m.data[i * du + u]
                    grow = g.data[u]
                    for v in range(du):
                        row[j * du + v] = f.reduce(row[j * du + v] + c * grow[v])
    return m


def ambient_block(m: Matrix, i: int, j: int, du: int) -> Matrix:
    return m.submatrix(range(i * du, (i + 1) * du), range(j * du, (j + 1) * du))


def decompose_in_grams(field, block: Matrix, grams: list[Matrix]) -> list | None:
    """Coefficients x with block = sum_b x_b grams[b], or None."""
    system = Matrix.from_columns(field, [[x for r in g.data for x in r] for g in grams])
    return solve(system, [x for r in block.data for x in r])


def ambient_map_matrix(field, geometry: str, k: int, grams: list[Matrix]) -> Matrix:
    """Matrix of the linear map net coordinates -> ambient entries (row-major)."""
    cols = []
    nd = net_dimension(k, len(grams))
    for t in range(nd):
        e = [field.zero] * nd
        e[t] = field.one
        a = ambient(Net.from_coordinates(field, geometry, k, grams, e))
        cols.append([x for r in a.data for x in r])
    return Matrix.from_columns(field, cols)

"""The DD invariant of quadric monads, Wall's criterion for nets and the
apolar quartic."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .exact import Matrix, MultiPoly, poly_det, rank
from .exact.field import PrimeField
from .exact.poly import linear_combination_matrix
from .tensors import Duality, Net, SpinSplit, Tensor3, ambient, build_spin_split, sym2_basis, wedge2_basis


# --------------------------------------------------------------------------
# DD


def dd_matrix(a: Tensor3, d: Duality, spin: SpinSplit | None = None) -> Matrix:
    """M_A: rows indexed by S^2 I (i <= i'), columns by wedge^2 W* (w < w').

    Column (w, w') is the image under S^2(phi_A) of (w ^ w') (x) omega,
    where phi_A(w (x) u) = A[., w, u] in I.
    """
    f = a.field
    dim_i, dim_w = a.dim_i, a.dim_w
    if a.dim_u != 4 or d.dim != dim_w or dim_w != dim_i + 1:
        raise ValueError("dd_invariant needs quadric dimensions dimI = k-1, dimW = k")
    if d.parity != "symmetric":
        raise ValueError("dd_invariant needs a symmetric duality")
    spin = spin or build_spin_split(f)
    omega_terms = [(uv, c) for uv, c in zip(wedge2_basis(4), spin.omega) if not f.is_zero(c)]
    sym = sym2_basis(dim_i)

    def phi(w, u):
        return [a.rows[i].data[w][u] for i in range(dim_i)]

    def sym_product(x, y):
        return [x[i] * y[j] + x[j] * y[i] if i != j else x[i] * y[i] for i, j in sym]

    cols = []
    for w, w2 in wedge2_basis(dim_w):
        acc = [0] * len(sym)
        for (u, u2), c in omega_terms:
            plus = sym_product(phi(w, u), phi(w2, u2))
            minus = sym_product(phi(w, u2), phi(w2, u))
            acc = [s + c * (p - m) for s, p, m in zip(acc, plus, minus)]
        cols.append([f.reduce(x) for x in acc])
    return Matrix.from_columns(f, cols) if cols else Matrix.zeros(f, 0, 0)


def dd_invariant(a: Tensor3, d: Duality, spin: SpinSplit | None = None):
    """det(M_A); only its vanishing is basis independent."""
    return dd_matrix(a, d, spin).det()


# --------------------------------------------------------------------------
# Wall semistability


def subspaces(field, n: int, dim: int):
    """All dim-dimensional subspaces of F_q^n, as dim x n RREF matrices."""
    elems = list(field.elements())
    for pivots in itertools.combinations(range(n), dim):
        free = [(r, c) for r in range(dim) for c in range(n) if c > pivots[r] and c not in pivots]
        for values in itertools.product(elems, repeat=len(free)):
            m = [[field.zero] * n for _ in range(dim)]
            for r, c in enumerate(pivots):
                m[r][c] = field.one
            for (r, c), v in zip(free, values):
                m[r][c] = v
            yield Matrix._raw(field, m, dim, n)


@dataclass
class SemistabilityWitness:
    verdict: str
    field_size: int
    i1: Matrix | None = None
    i2: Matrix | None = None

    @property
    def semistable(self) -> bool:
        return self.verdict == "semistable"

    def composite(self, n: Net) -> list[Matrix]:
        """The matrices of B -> I1 (x) I2, one per basis element b."""
        return [self.i1 @ n.coefficient_matrix(b) @ self.i2.T for b in range(n.dim_b)]

    def verify(self, n: Net) -> bool:
        if self.semistable:
            return True
        return self.i1.rows + self.i2.rows > n.k and all(m.is_zero() for m in self.composite(n))

    def to_json(self) -> dict:
        doc = {"verdict": self.verdict, "field_size": self.field_size}
        if self.i1 is not None:
            doc["I1"] = self.i1.tolist()
            doc["I2"] = self.i2.tolist()
        return doc


WALL_LIMITS = {2: 4, 3: 3}


def wall_semistable(n: Net) -> SemistabilityWitness:
    """Search for I1, I2 in I* with dim I1 + dim I2 > k killing every quadric of the net."""
    f = n.field
    q = f.size
    if q not in WALL_LIMITS:
        raise ValueError("Wall enumeration runs only over F_2 or F_3")
    if n.k > WALL_LIMITS[q]:
        raise ValueError(f"k={n.k} too large for enumeration over F_{q} (max {WALL_LIMITS[q]})")
    k = n.k
    mats = [n.coefficient_matrix(b) for b in range(n.dim_b)]
    spaces = {d: list(subspaces(f, k, d)) for d in range(1, k + 1)}
    for d1 in range(1, k + 1):
        for d2 in range(max(1, k + 1 - d1), k + 1):
            for x1 in spaces[d1]:
                left = [x1 @ m for m in mats]
                for x2 in spaces[d2]:
                    if all((l @ x2.T).is_zero() for l in left):
                        return SemistabilityWitness("unstable", q, x1, x2)
    return SemistabilityWitness("semistable", q)


def random_symmetric(field, n: int, rng: random.Random) -> Matrix:
    m = Matrix.zeros(field, n, n)
    for i, j in sym2_basis(n):
        v = field.random(rng)
        m.data[i][j] = m.data[j][i] = v
    return m


def sample_wall_net(q: int, k: int, rng: random.Random, attempts: int = 1000) -> Net:
    """A V22-type net over F_q with ambient rank 3k + 1 and a random B*."""
    f = PrimeField(q)
    for _ in range(attempts):
        grams = [random_symmetric(f, 4, rng) for _ in range(3)]
        flat = Matrix(f, [[x for r in g.data for x in r] for g in grams])
        if rank(flat) != 3:
            continue
        coords = [f.random(rng) for _ in range(3 * k * (k + 1) // 2)]
        n = Net.from_coordinates(f, "v22", k, grams, coords)
        if rank(ambient(n)) == 3 * k + 1:
            return n
    raise RuntimeError("no rank-certified net found")


def split_net(n: Net) -> Net:
    """Zero out the first row and column of the net: (e_1, I*) is a destabilising pair."""
    f = n.field
    c = [[list(cb) for cb in row] for row in n.coeffs]
    for j in range(n.k):
        c[0][j] = [f.zero] * n.dim_b
        c[j][0] = [f.zero] * n.dim_b
    return Net(f, n.geometry, c, n.grams)


def zero_net(n: Net) -> Net:
    f = n.field
    return Net(f, n.geometry, [[[f.zero] * n.dim_b for _ in range(n.k)] for _ in range(n.k)], n.grams)


# --------------------------------------------------------------------------
# apolar quartic


def apolar_quartic(model) -> MultiPoly:
    """det(x_1 q_1 + x_2 q_2 + x_3 q_3) for the Gram matrices of B*."""
    grams = model.grams if hasattr(model, "grams") else model
    f = grams[0].field
    quartic = poly_det(linear_combination_matrix(f, grams))
    if quartic.is_zero():
        raise ValueError("degenerate net: the apolar quartic vanishes identically")
    return quartic

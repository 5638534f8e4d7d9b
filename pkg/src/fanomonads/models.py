"""Coordinate models of the quadric Q, the del Pezzo V5 and the prime Fano V22.

Each model knows how to sample points over its field and how to evaluate,
at a point x, the maps U -> Hom(E2_x, E3_x) that monads are built from.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field

from .exact import Matrix, kernel_basis, rank
from .exact.field import field_from_prime
from .tensors import SpinSplit, build_spin_split, sym2_basis, wedge2_basis


class SamplingError(RuntimeError):
    """A sampler ran out of retries."""


@dataclass(frozen=True)
class GeometryTag:
    kind: str
    index: int
    degree: int
    genus: int

    @property
    def q(self) -> int:
        return self.index // 2

    @property
    def r(self) -> int:
        return self.index % 2

    @property
    def dim_u(self) -> int:
        return {"quadric": 4, "v5": 5, "v22": 4}[self.kind]

    @property
    def bundle_ranks(self) -> tuple[int, int, int]:
        """Ranks of (E1, E2, E3) in the monad I*(x)E1 -> W*(x)E2 -> I(x)E3."""
        return {"quadric": (1, 2, 1), "v5": (2, 1, 2), "v22": (3, 2, 3)}[self.kind]

    @property
    def parity(self) -> str:
        """Parity of the duality D: (r_X + 1)-symmetric."""
        return "symmetric" if (self.r + 1) % 2 == 0 else "skew"

    @property
    def k_range(self) -> tuple[int, int]:
        return {"quadric": (2, 6), "v5": (2, 4), "v22": (1, 2)}[self.kind]

    def dim_i(self, k: int) -> int:
        return {"quadric": k - 1, "v5": k, "v22": k}[self.kind]

    def dim_w(self, k: int) -> int:
        return {"quadric": k, "v5": 4 * k + 2, "v22": 3 * k + 1}[self.kind]

    def c2(self, k: int) -> int:
        """Second Chern class of the instanton for the net/monad parameter k."""
        return k + 7 if self.kind == "v22" else k

    def expected_delta(self, k: int) -> int:
        c2 = self.c2(k)
        return {4: 8 * c2 - 3, 3: 6 * c2 - 6, 2: 4 * c2 - 3, 1: 2 * c2 - self.genus - 2}[self.index]

    def check_k(self, k: int):
        lo, hi = self.k_range
        if not lo <= k <= hi:
            raise ValueError(f"k={k} unsupported for {self.kind}; supported range is {lo}..{hi}")

    @classmethod
    def of(cls, value) -> "GeometryTag":
        if isinstance(value, GeometryTag):
            return value
        try:
            return GEOMETRIES[str(value).lower()]
        except KeyError:
            raise ValueError(f"unknown geometry {value!r}; choose from {sorted(GEOMETRIES)}") from None


GEOMETRIES = {
    # genus from (-K)^3 = 2g - 2
    "quadric": GeometryTag("quadric", 3, 2, 28),
    "v5": GeometryTag("v5", 2, 5, 21),
    "v22": GeometryTag("v22", 1, 22, 12),
}


def _random_vector(field, n, rng):
    return [field.random(rng) for _ in range(n)]


def _random_combination(field, basis: Matrix, rng) -> list:
    coeffs = _random_vector(field, basis.cols, rng)
    return basis.apply(coeffs)


def _matrix_json(m: Matrix) -> list:
    return m.tolist()


def _matrix_from_json(field, rows) -> Matrix:
    return Matrix(field, [[field.from_json(x) for x in r] for r in rows])


# --------------------------------------------------------------------------
# points


@dataclass
class XPoint:
    """A point of the threefold.

    quadric: ``basis`` is 4 x 2 with columns spanning an omega-isotropic plane P.
    v5: ``basis`` is 5 x 2 with columns spanning Lambda in U* (sigma_Lambda = 0).
    v22: ``forms`` is the 2 x 3 matrix N of linear forms (each a length-4
    coefficient list) whose signed 2 x 2 minors cut out the cubic T_x;
    ``g`` records the coordinate change when the cubic is a translate of
    the standard one.
    """

    geometry: str
    basis: Matrix | None = None
    forms: list | None = None
    g: Matrix | None = None

    def to_json(self) -> dict:
        doc: dict = {"geometry": self.geometry}
        if self.basis is not None:
            doc["basis"] = _matrix_json(self.basis)
        if self.forms is not None:
            f = self.field
            doc["forms"] = [[[f.to_json(c) for c in form] for form in row] for row in self.forms]
        if self.g is not None:
            doc["g"] = _matrix_json(self.g)
        return doc

    @property
    def field(self):
        if self.basis is not None:
            return self.basis.field
        return self._field

    @classmethod
    def from_json(cls, field, doc: dict) -> "XPoint":
        p = cls(doc["geometry"])
        p._field = field
        if "basis" in doc:
            p.basis = _matrix_from_json(field, doc["basis"])
        if "forms" in doc:
            p.forms = [[[field.from_json(c) for c in form] for form in row] for row in doc["forms"]]
        if "g" in doc:
            p.g = _matrix_from_json(field, doc["g"])
        return p


def _cubic_point(field, forms, g=None) -> XPoint:
    p = XPoint("v22", forms=forms, g=g)
    p._field = field
    return p


# --------------------------------------------------------------------------
# quadric


@dataclass
class QuadricModel:
    field: object
    spin: SpinSplit

    geometry = "quadric"

    @classmethod
    def build(cls, field) -> "QuadricModel":
        return cls(field, build_spin_split(field))

    def to_json(self, seed=None) -> dict:
        return {
            "geometry": "quadric",
            "prime": self.field.characteristic,
            "seed": seed,
            "B_gram_matrices": [_matrix_json(self.spin.omega_gram)],
            "seeded_points": [],
        }


def sample_point_quadric(model: QuadricModel, rng: random.Random) -> XPoint:
    """A random omega-isotropic 2-plane P = span(p1, p2) in U."""
    f = model.field
    omega = model.spin.omega_gram
    for _ in range(1000):
        p1 = _random_vector(f, 4, rng)
        if all(f.is_zero(x) for x in p1):
            continue
        # p2 in the 3-dim space omega(p1, .) = 0
        perp = kernel_basis(Matrix(f, [omega.T.apply(p1)]))
        p2 = _random_combination(f, perp, rng)
        basis = Matrix.from_columns(f, [p1, p2])
        if rank(basis) == 2:
            return XPoint("quadric", basis=basis)
    raise SamplingError("could not sample an isotropic plane")


def plucker_vector(field, p: Matrix) -> list:
    """Coordinates of p1 ^ p2 in wedge^2 U."""
    a, b = p.col(0), p.col(1)
    return [field.reduce(a[i] * b[j] - a[j] * b[i]) for i, j in wedge2_basis(p.rows)]


# --------------------------------------------------------------------------
# V5


@dataclass
class V5Model:
    """B in wedge^2 U (dim U = 5) given by three skew 5 x 5 Gram matrices."""

    field: object
    grams: list[Matrix]

    geometry = "v5"

    def to_json(self, seed=None) -> dict:
        return {
            "geometry": "v5",
            "prime": self.field.characteristic,
            "seed": seed,
            "B_gram_matrices": [_matrix_json(g) for g in self.grams],
            "seeded_points": [],
        }


def build_v5_model(field, rng: random.Random, attempts: int = 20) -> V5Model:
    """A random 3-dim B in wedge^2 U, certified by successful point sampling."""
    pairs = wedge2_basis(5)
    for _ in range(attempts):
        grams = []
        for _b in range(3):
            g = Matrix.zeros(field, 5, 5)
            for i, j in pairs:
                c = field.random(rng)
                g[i, j] = c
                g[j, i] = field.neg(c)
            grams.append(g)
        flat = Matrix(field, [[x for r in g.data for x in r] for g in grams])
        if rank(flat) != 3:
            continue
        model = V5Model(field, grams)
        try:
            sample_point_v5(model, random.Random(rng.random()))
        except SamplingError:
            continue
        return model
    raise SamplingError("could not build a V5 model")


def v5_conditions(model: V5Model, lam1: list) -> Matrix:
    """Rows: the linear functionals lambda2 -> <b, lam1 ^ lam2> for each b."""
    return Matrix(model.field, [g.T.apply(lam1) for g in model.grams])


def sample_point_v5(model: V5Model, rng: random.Random, retries: int = 100) -> XPoint:
    f = model.field
    for _ in range(retries):
        lam1 = _random_vector(f, 5, rng)
        if all(f.is_zero(x) for x in lam1):
            continue
        sol = kernel_basis(v5_conditions(model, lam1))
        if sol.cols < 2:
            continue
        lam2 = _random_combination(f, sol, rng)
        basis = Matrix.from_columns(f, [lam1, lam2])
        if rank(basis) == 2:
            return XPoint("v5", basis=basis)
    raise SamplingError("V5 point sampling exhausted its retries; B looks degenerate")


# --------------------------------------------------------------------------
# V22


def quadric_from_monomial_coeffs(field, coeffs: list) -> Matrix:
    """Symmetric F with f(x) = x^t F x from coefficients on x_i x_j (i <= j)."""
    half = field.inv(field(2))
    m = Matrix.zeros(field, 4, 4)
    for c, (i, j) in zip(coeffs, sym2_basis(4)):
        if i == j:
            m[i, i] = c
        else:
            m[i, j] = field.reduce(c * half)
            m[j, i] = field.reduce(c * half)
    return m


def monomial_coeffs_of_quadric(field, fmat: Matrix) -> list:
    return [fmat[i, j] if i == j else field.reduce(2 * fmat[i, j]) for i, j in sym2_basis(4)]


def apolarity(field, fmat: Matrix, gram: Matrix):
    """The invariant pairing tr(F G) between S^2 U* and S^2 U."""
    return field.reduce(sum(fmat[i, j] * gram[j, i] for i in range(4) for j in range(4)))


def product_quadric(field, l: list, m: list) -> Matrix:
    """Symmetric matrix of the quadric l(x) m(x)."""
    half = field.inv(field(2))
    return Matrix(field, [[field.reduce((l[i] * m[j] + l[j] * m[i]) * half) for j in range(4)] for i in range(4)])


def signed_minors(field, forms: list) -> list[Matrix]:
    """(D12, -D02, D01) for the 2 x 3 matrix of linear forms; N . minors = 0."""
    r0, r1 = forms

    def minor(a, b):
        return product_quadric(field, r0[a], r1[b]) - product_quadric(field, r0[b], r1[a])

    return [minor(1, 2), -minor(0, 2), minor(0, 1)]


def standard_cubic_forms(field) -> list:
    """N = [[x, y, z], [y, z, w]] for the curve (s^3, s^2 t, s t^2, t^3)."""
    e = Matrix.identity(field, 4).data
    return [[e[0], e[1], e[2]], [e[1], e[2], e[3]]]


def transform_forms(field, forms: list, g: Matrix) -> list:
    """Forms of the cubic g.T: l -> l o g^{-1}."""
    ginv = g.inverse()
    return [[ginv.T.apply(l) for l in row] for row in forms]


def cubic_points(field, g: Matrix | None, params) -> list[list]:
    pts = []
    for s, t in params:
        v = [field.reduce(s**3), field.reduce(s * s * t), field.reduce(s * t * t), field.reduce(t**3)]
        pts.append(g.apply(v) if g is not None else v)
    return pts


def quadric_ideal_by_evaluation(field, points: list[list]) -> Matrix:
    """Columns: monomial coefficient vectors of quadrics vanishing at all points."""
    rows = [[field.reduce(p[i] * p[j]) for i, j in sym2_basis(4)] for p in points]
    return kernel_basis(Matrix(field, rows))


def curve_params(field, count: int) -> list[tuple]:
    out = [(1, 0), (0, 1)]
    a = 1
    while len(out) < count:
        out.append((1, a))
        a += 1
    return [(field(s), field(t)) for s, t in out]


@dataclass
class V22Model:
    """The net B* in S^2 U (dim U = 4) as three symmetric Gram matrices."""

    field: object
    grams: list[Matrix]
    seeded_points: list[XPoint] = dc_field(default_factory=list)

    geometry = "v22"

    @property
    def v_basis(self) -> Matrix:
        """Annihilator V of B* in S^2 U*, as monomial coefficient columns (7-dim)."""
        rows = [[g[i, j] for i, j in sym2_basis(4)] for g in self.grams]
        return kernel_basis(Matrix(self.field, rows))

    def annihilates(self, fmat: Matrix) -> bool:
        return all(self.field.is_zero(apolarity(self.field, fmat, g)) for g in self.grams)

    def to_json(self, seed=None) -> dict:
        return {
            "geometry": "v22",
            "prime": self.field.characteristic,
            "seed": seed,
            "B_gram_matrices": [_matrix_json(g) for g in self.grams],
            "seeded_points": [p.to_json() for p in self.seeded_points],
        }


def build_v22_model(field, rng: random.Random, retries: int = 50) -> V22Model:
    """Net B* annihilating the ideals of two twisted cubics T0 and T1 = g.T0."""
    if field.size is not None and field.size < 11:
        raise ValueError("the V22 construction needs a field with at least 11 elements")
    params = curve_params(field, 10)
    q0 = quadric_ideal_by_evaluation(field, cubic_points(field, None, params))
    for _ in range(retries):
        g = Matrix.random(field, 4, 4, rng)
        if rank(g) < 4:
            continue
        q1 = quadric_ideal_by_evaluation(field, cubic_points(field, g, params))
        both = q0.hstack(q1)
        if q0.cols != 3 or q1.cols != 3 or rank(both) != 6:
            continue
        # grams G (in S^2-basis coordinates s) with sum_{i<=j} c_ij G_ij = 0
        half = field.inv(field(2))
        scale = [field.one if i == j else half for i, j in sym2_basis(4)]
        rows = [[field.reduce(c * s) for c, s in zip(col, scale)] for col in both.columns()]
        perp = kernel_basis(Matrix(field, rows))
        if perp.cols != 4:
            continue
        coords = Matrix(field, [_random_vector(field, 4, rng) for _ in range(3)])
        if rank(coords) != 3:
            continue
        grams = []
        for crow in coords.data:
            s = perp.apply(crow)
            gm = Matrix.zeros(field, 4, 4)
            for val, (i, j) in zip(s, sym2_basis(4)):
                if i == j:
                    gm[i, i] = val
                else:
                    gm[i, j] = field.reduce(val * half)
                    gm[j, i] = field.reduce(val * half)
            grams.append(gm)
        forms0 = standard_cubic_forms(field)
        seeded = [_cubic_point(field, forms0), _cubic_point(field, transform_forms(field, forms0, g), g=g)]
        model = V22Model(field, grams, seeded)
        if model.v_basis.cols != 7:
            continue
        if not all(m_ok for m_ok in (_cubic_in_model(model, p) for p in seeded)):
            continue
        return model
    raise SamplingError("could not build a V22 model")


def _cubic_in_model(model: V22Model, point: XPoint) -> bool:
    return all(model.annihilates(q) for q in signed_minors(model.field, point.forms))


def v22_row_conditions(model: V22Model, row0: list) -> Matrix:
    """Linear conditions on row1 (12 unknowns) making every minor of [row0; row1] annihilate B*.

    The minor on columns (a, b) pairs with G as row0_a^t G row1_b - row0_b^t G row1_a.
    """
    f = model.field
    rows = []
    for a, b in itertools.combinations(range(3), 2):
        for g in model.grams:
            cond = [f.zero] * 12
            ga = g.T.apply(row0[a])  # row0_a^t G as a vector
            gb = g.T.apply(row0[b])
            for u in range(4):
                cond[4 * b + u] = f.add(cond[4 * b + u], ga[u])
                cond[4 * a + u] = f.sub(cond[4 * a + u], gb[u])
            rows.append(cond)
    return Matrix(f, rows)


def is_genuine_cubic(field, forms: list) -> bool:
    """Codimension-2 determinantal check: independent minors and h^0(I(3)) = 10."""
    minors = signed_minors(field, forms)
    coeffs = [monomial_coeffs_of_quadric(field, q) for q in minors]
    if rank(Matrix(field, coeffs)) != 3:
        return False
    # degree-3 part of the ideal: x_u * q for all u, q
    cubic_monos = list(itertools.combinations_with_replacement(range(4), 3))
    index = {m: n for n, m in enumerate(cubic_monos)}
    rows = []
    for c in coeffs:
        for u in range(4):
            row = [field.zero] * len(cubic_monos)
            for val, (i, j) in zip(c, sym2_basis(4)):
                key = tuple(sorted((i, j, u)))
                row[index[key]] = field.add(row[index[key]], val)
            rows.append(row)
    return rank(Matrix(field, rows)) == 10


def sample_point_v22(model: V22Model, rng: random.Random, retries: int = 100) -> XPoint:
    """A cubic whose ideal quadrics annihilate B*.

    For fixed first row of N the annihilation conditions are linear in the
    second row (9 conditions, 12 unknowns, the first row is always a
    solution), so a point comes from one kernel computation.
    """
    f = model.field
    for _ in range(retries):
        row0 = [_random_vector(f, 4, rng) for _ in range(3)]
        sol = kernel_basis(v22_row_conditions(model, row0))
        if sol.cols < 2:
            continue
        flat = _random_combination(f, sol, rng)
        row1 = [flat[4 * a:4 * a + 4] for a in range(3)]
        forms = [row0, row1]
        if not is_genuine_cubic(f, forms):
            continue
        return _cubic_point(f, forms)
    raise SamplingError("V22 point sampling exhausted its retries")


# --------------------------------------------------------------------------
# fibres


def syzygy_matrix(field, point: XPoint) -> list[list[list]]:
    """The 3 x 2 matrix N^t of linear forms (entries are coefficient lists)."""
    r0, r1 = point.forms
    return [[r0[a], r1[a]] for a in range(3)]


def fiber_eval(point: XPoint, geometry) -> list[Matrix]:
    """For each basis vector e_u of U, the map E2_x -> E3_x it induces.

    quadric: 1 x 2, u -> omega(u, .) on P. v5: 2 x 1, u -> (lambda(u))
    for the two basis covectors of Lambda. v22: 3 x 2, the syzygy matrix
    evaluated at u.
    """
    kind = GeometryTag.of(geometry).kind
    if kind == "quadric":
        f = point.basis.field
        omega = build_spin_split(f).omega_gram
        m = omega @ point.basis  # row u: omega(e_u, p_c)
        return [Matrix._raw(f, [m.data[u][:]], 1, 2) for u in range(4)]
    if kind == "v5":
        f = point.basis.field
        return [Matrix._raw(f, [[point.basis[u, 0]], [point.basis[u, 1]]], 2, 1) for u in range(5)]
    f = point.field
    syz = syzygy_matrix(f, point)
    return [Matrix(f, [[syz[r][c][u] for c in range(2)] for r in range(3)]) for u in range(4)]


def fiber_matrix(field, point: XPoint, geometry) -> Matrix:
    """Quadric convenience: the 4 x 2 matrix of U -> P*, u -> omega(u, .)|_P."""
    return Matrix(field, [m.data[0] for m in fiber_eval(point, geometry)])


def model_from_json(doc: dict):
    field = field_from_prime(doc["prime"])
    geo = doc["geometry"]
    if geo == "quadric":
        return QuadricModel.build(field)
    grams = [_matrix_from_json(field, g) for g in doc["B_gram_matrices"]]
    if geo == "v5":
        return V5Model(field, grams)
    pts = [XPoint.from_json(field, p) for p in doc.get("seeded_points", [])]
    return V22Model(field, grams, pts)


def build_model(geometry, field, rng: random.Random):
    kind = GeometryTag.of(geometry).kind
    if kind == "quadric":
        return QuadricModel.build(field)
    if kind == "v5":
        return build_v5_model(field, rng)
    return build_v22_model(field, rng)


def sample_point(model, rng: random.Random) -> XPoint:
    kind = model.geometry
    if kind == "quadric":
        return sample_point_quadric(model, rng)
    if kind == "v5":
        return sample_point_v5(model, rng)
    return sample_point_v22(model, rng)


def point_is_valid(model, point: XPoint) -> bool:
    """The defining isotropy / annihilation conditions hold exactly."""
    f = model.field
    if model.geometry == "quadric":
        p = point.basis
        return f.is_zero(model.spin.omega_form(p.col(0), p.col(1))) and rank(p) == 2
    if model.geometry == "v5":
        p = point.basis
        return rank(p) == 2 and all(
            f.is_zero(f.reduce(sum(a * b for a, b in zip(p.col(0), g.apply(p.col(1)))))) for g in model.grams)
    return _cubic_in_model(model, point)

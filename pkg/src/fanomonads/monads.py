"""Monads (A, D) on the three threefolds: sampling, validation, group action
and the tangent/orbit dimension counts."""

from __future__ import annotations

import itertools
import random
from dataclasses import asdict, dataclass, field as dc_field
from math import comb

from .exact import Matrix, column_space_basis, kernel_basis, pfaffian, rank, solve
from .exact.field import field_from_prime
from .exact.matrix import det
from .exact.univariate import interpolate, roots_in_field
from .models import (
    GeometryTag,
    SamplingError,
    V22Model,
    V5Model,
    XPoint,
    build_model,
    fiber_eval,
    sample_point,
    sample_point_quadric,
)
from .tensors import (
    Duality,
    Net,
    SpinSplit,
    Tensor3,
    ambient,
    ambient_block,
    build_spin_split,
    decompose_in_grams,
    net_dimension,
    pair_condition,
    project_condition,
)


@dataclass
class MonadData:
    geometry: GeometryTag
    k: int
    a: Tensor3
    d: Duality

    @property
    def field(self):
        return self.a.field

    @property
    def dim_i(self) -> int:
        return self.a.dim_i

    @property
    def dim_w(self) -> int:
        return self.a.dim_w

    def dims_match_table(self) -> bool:
        g = self.geometry
        return (self.a.dim_i, self.a.dim_w, self.a.dim_u) == (g.dim_i(self.k), g.dim_w(self.k), g.dim_u) \
            and self.d.dim == g.dim_w(self.k) and self.d.parity == g.parity

    def reassemble(self) -> Matrix:
        """A D A^t as a (dimI dimU) square matrix indexed by (i, u)."""
        c = self.a.flatten_iu_w()
        return c @ self.d.matrix @ c.T

    def to_json(self) -> dict:
        f = self.field
        return {
            "geometry": self.geometry.kind,
            "k": self.k,
            "prime": f.characteristic,
            "dimI": self.dim_i,
            "dimW": self.dim_w,
            "parity": self.d.parity,
            "D": [[f.to_json(x) for x in r] for r in self.d.matrix.data],
            "A": self.a.to_nested(),
        }

    @classmethod
    def from_json(cls, doc: dict, field=None) -> "MonadData":
        field = field or field_from_prime(doc["prime"])
        geo = GeometryTag.of(doc["geometry"])
        d = Duality(Matrix(field, [[field.from_json(x) for x in r] for r in doc["D"]]), doc.get("parity", geo.parity))
        a = Tensor3.from_nested(field, doc["A"])
        if a.dim_i == 0:
            a = Tensor3.zeros(field, 0, d.dim, geo.dim_u)
        m = cls(geo, doc["k"], a, d)
        if (m.dim_i, m.dim_w) != (doc["dimI"], doc["dimW"]):
            raise ValueError("serialized dimensions disagree with the tensor")
        return m


# --------------------------------------------------------------------------
# quadric sampler


def quadric_row_conditions(spin: SpinSplit, previous: list[Matrix], d: Matrix, dim_w: int) -> Matrix:
    """Linear conditions on a new row x in W (x) U: p_V(alt(a_j^t D x)) = 0 for each earlier a_j."""
    f = spin.field
    cols = []
    for w in range(dim_w):
        for u in range(4):
            e = Matrix.zeros(f, dim_w, 4)
            e.data[w][u] = f.one
            col = []
            for a_j in previous:
                col.extend(pair_condition(spin, a_j, d, e))
            cols.append(col)
    if not previous:
        return Matrix.zeros(f, 0, 4 * dim_w)
    return Matrix.from_columns(f, cols)


def _greedy_rows(spin, d: Matrix, k: int, rng: random.Random, first: Matrix | None = None) -> list[Matrix] | None:
    """Row-by-row sampler. The solution space of row i always contains the
    earlier rows, so this only produces independent rows for k <= 5."""
    f = spin.field
    rows: list[Matrix] = []
    if first is not None:
        rows.append(first)
    while len(rows) < k - 1:
        i = len(rows)
        expected = 4 * k - 5 * i
        sol = kernel_basis(quadric_row_conditions(spin, rows, d, k))
        if sol.cols < expected:
            return None
        vec = sol.apply([f.random(rng) for _ in range(sol.cols)])
        rows.append(Matrix(f, [vec[4 * w:4 * w + 4] for w in range(k)]))
    if rank(Matrix(f, [r for m in rows for r in [sum(m.data, [])]])) < k - 1:
        return None
    return rows


# In U-blocks A = sum_u A_u (x) e_u (A_u of size dimI x dimW, D = 1) the
# quadric condition for omega = e0^e2 + e1^e3 reads: A_0 A_1^t, A_0 A_3^t,
# A_1 A_2^t, A_2 A_3^t symmetric and A_0 A_2^t - A_1 A_3^t symmetric.


def _skew_part(m: Matrix) -> list:
    f = m.field
    return [f.sub(m.data[i][j], m.data[j][i]) for i, j in itertools.combinations(range(m.rows), 2)]


def _block(vec: list, n: int, k: int, field) -> Matrix:
    return Matrix._raw(field, [list(vec[i * k:(i + 1) * k]) for i in range(n)], n, k)


def _skew_system(field, n: int, k: int, lefts: list[Matrix], rights: list[Matrix],
                 basis: Matrix | None = None) -> Matrix:
    """Columns: skew parts of L X^t (L in lefts) and X R^t (R in rights) for X over a basis."""
    if basis is None:
        basis = Matrix.identity(field, n * k)
    cols = []
    for v in basis.columns():
        x = _block(v, n, k, field)
        col = []
        for l in lefts:
            col.extend(_skew_part(l @ x.T))
        for r in rights:
            col.extend(_skew_part(x @ r.T))
        cols.append(col)
    return Matrix.from_columns(field, cols)


def _random_in(basis: Matrix, field, rng) -> list:
    return basis.apply([field.random(rng) for _ in range(basis.cols)])


def _blocks_to_tensor(field, blocks: list[Matrix]) -> Tensor3:
    n, k = blocks[0].rows, blocks[0].cols
    return Tensor3(field, [Matrix._raw(field, [[blocks[u].data[i][w] for u in range(4)] for w in range(k)], k, 4)
                           for i in range(n)])


def _solve_last_block(field, n, k, a0, a2, a1, l3, rng):
    """A_3 in L3 with skew(A_1 A_3^t) = skew(A_0 A_2^t), or None."""
    s = _skew_system(field, n, k, [a1], [], l3)
    x = solve(s, _skew_part(a0 @ a2.T))
    if x is None:
        return None
    ker = kernel_basis(s)
    if ker.cols:
        x = [field.add(a, b) for a, b in zip(x, _random_in(ker, field, rng))]
    return _block(l3.apply(x), n, k, field)


def _quadric_blocks(k: int, field, rng: random.Random) -> Tensor3 | None:
    """A_0, A_2 free; A_1, A_3 in the linear spaces cut by their symmetric
    partners; the last (bilinear) condition is linear in A_3 once A_1 is fixed.

    At k = 6 that final square system is always singular with one
    consistency condition; A_1 then moves on a pencil B + tC and t is a
    root of det([pivot columns | right-hand side]).
    """
    n = k - 1
    if n == 1:
        return _blocks_to_tensor(field, [Matrix.random(field, 1, k, rng) for _ in range(4)])
    a0 = Matrix.random(field, n, k, rng)
    a2 = Matrix.random(field, n, k, rng)
    l1 = kernel_basis(_skew_system(field, n, k, [a0], [a2]))
    l3 = kernel_basis(_skew_system(field, n, k, [a0, a2], []))
    b = _block(_random_in(l1, field, rng), n, k, field)
    c = _block(_random_in(l1, field, rng), n, k, field)
    rhs = _skew_part(a0 @ a2.T)
    t0 = field.random(rng)
    s0 = _skew_system(field, n, k, [b + c.scale(t0)], [], l3)
    aug = s0.hstack(Matrix.from_columns(field, [rhs]))
    r = rank(s0)
    if rank(aug) == r:
        ts = [t0]
    else:
        if r != s0.rows - 1 or field.size is not None and field.size <= r + 2:
            return None
        _, piv = column_space_basis(s0)

        def consistency(t):
            st = _skew_system(field, n, k, [b + c.scale(t)], [], l3)
            return det(st.submatrix(range(st.rows), piv).hstack(Matrix.from_columns(field, [rhs])))

        pts = list(range(r + 2))
        coeffs = interpolate(field, pts, [consistency(field(t)) for t in pts])
        if not coeffs or len(coeffs) > r + 1:
            return None
        ts = roots_in_field(field, coeffs)
        rng.shuffle(ts)
    for t in ts:
        a1 = b + c.scale(t)
        a3 = _solve_last_block(field, n, k, a0, a2, a1, l3, rng)
        if a3 is not None:
            return _blocks_to_tensor(field, [a0, a1, a2, a3])
    return None


def sample_quadric_monad(k: int, field, rng: random.Random, resamples: int = 50) -> MonadData:
    """A random solution of the quadric condition with D = identity and DD(A) != 0."""
    from .invariants import dd_invariant

    geo = GeometryTag.of("quadric")
    geo.check_k(k)
    spin = build_spin_split(field)
    d = Duality(Matrix.identity(field, k), "symmetric")
    for _ in range(resamples):
        a = _quadric_blocks(k, field, rng)
        if a is None:
            continue
        if any(not field.is_zero(x) for x in project_condition(a, d, "quadric", spin)):
            raise ArithmeticError("block sampler produced a non-solution")
        if field.is_zero(dd_invariant(a, d, spin)):
            continue
        return MonadData(geo, k, a, d)
    raise SamplingError(f"quadric sampler exhausted {resamples} resamples at k={k}")


def random_symplectic(field, rng: random.Random, omega_gram: Matrix, factors: int = 4) -> Matrix:
    """Product of symplectic transvections u -> u + c omega(v, u) v."""
    out = Matrix.identity(field, 4)
    for _ in range(factors):
        v = Matrix(field, [[field.random(rng)] for _ in range(4)])
        c = field.random_nonzero(rng)
        out = (Matrix.identity(field, 4) + (v @ (v.T @ omega_gram)).scale(c)) @ out
    return out


def act_on_u(a: Tensor3, g: Matrix) -> Tensor3:
    """a_i[w] -> g a_i[w]."""
    return Tensor3(a.field, [r @ g.T for r in a.rows])


def sample_degenerate_quadric_monad(k: int, field, rng: random.Random, point: XPoint | None = None,
                                    resamples: int = 50) -> tuple[MonadData, XPoint]:
    """A solution A whose fibre map A_x is not surjective at a chosen point x.

    For k <= 5 the first row is taken in W (x) P, so omega(a_1, P) = 0 and
    row 1 of A_x vanishes, and the other rows are filled greedily. For
    larger k the row sampler stalls, so A is the direct sum of a generic
    (k-1)-solution and a single vector c in P, moved by a random group
    element.
    """
    geo = GeometryTag.of("quadric")
    geo.check_k(k)
    spin = build_spin_split(field)
    if point is None:
        from .models import QuadricModel

        point = sample_point_quadric(QuadricModel(field, spin), rng)
    d = Duality(Matrix.identity(field, k), "symmetric")
    p = point.basis
    for _ in range(resamples):
        if k <= 5:
            first = Matrix.random(field, k, 2, rng) @ p.T  # row w is a combination of p_1, p_2
            rows = _greedy_rows(spin, d.matrix, k, rng, first=first)
            if rows is None:
                continue
            return MonadData(geo, k, Tensor3(field, rows), d), point
        smaller = _quadric_blocks(k - 1, field, rng)
        if smaller is None:
            continue
        c = p.apply([field.random(rng), field.random(rng)])
        if all(field.is_zero(x) for x in c):
            continue
        rows = [r.vstack(Matrix.zeros(field, 1, 4)) for r in smaller.rows]
        last = Matrix.zeros(field, k - 1, 4).vstack(Matrix(field, [c]))
        m = MonadData(geo, k, Tensor3(field, rows + [last]), d)
        m = group_act(m, random_invertible(field, k - 1, rng), random_isometry(d, rng))
        return m, point
    raise SamplingError("degenerate quadric sampler failed")


# --------------------------------------------------------------------------
# net samplers


def random_net(field, geometry: str, k: int, grams: list[Matrix], rng: random.Random) -> Net:
    coords = [field.random(rng) for _ in range(net_dimension(k, len(grams)))]
    return Net.from_coordinates(field, geometry, k, grams, coords)


def net_combination(a: Net, b: Net, t) -> Net:
    f = a.field
    coords = [f.reduce(x + t * y) for x, y in zip(a.coordinates(), b.coordinates())]
    return Net.from_coordinates(f, a.geometry, a.k, a.grams, coords)


def target_rank(geometry, k: int) -> int:
    return GeometryTag.of(geometry).dim_w(k)


def _pencil_root_net(field, geometry: str, k: int, grams, rng, degree: int, invariant, attempts: int,
                     log: list | None) -> Net:
    if field.size is not None and field.size <= degree:
        raise ValueError("field too small to interpolate the pencil polynomial")
    want = target_rank(geometry, k)
    for n in range(attempts):
        n0 = random_net(field, geometry, k, grams, rng)
        n1 = random_net(field, geometry, k, grams, rng)
        ts = list(range(degree + 1))
        vals = [invariant(ambient(net_combination(n0, n1, field(t)))) for t in ts]
        coeffs = interpolate(field, ts, vals)
        if not coeffs:
            if log is not None:
                log.append({"pencil": n, "roots": None, "reason": "identically zero"})
            continue
        roots = roots_in_field(field, coeffs)
        rng.shuffle(roots)
        for t in roots:
            cand = net_combination(n0, n1, t)
            if rank(ambient(cand)) == want:
                return cand
        if log is not None:
            log.append({"pencil": n, "roots": len(roots)})
    raise SamplingError(f"no {geometry} pencil with a rank-{want} member in {attempts} tries")


def sample_v5_net(k: int, model: V5Model, rng: random.Random, attempts: int = 100, log: list | None = None) -> Net:
    """A net in S^2 I (x) B whose skew ambient form has rank exactly 4k + 2."""
    geo = GeometryTag.of("v5")
    geo.check_k(k)
    f = model.field
    want = target_rank(geo, k)
    if k in (2, 3):
        for _ in range(attempts):
            n = random_net(f, "v5", k, model.grams, rng)
            if rank(ambient(n)) == want:
                return n
        raise SamplingError("no random V5 net reached the target rank")
    return _pencil_root_net(f, "v5", k, model.grams, rng, 5 * k // 2, pfaffian, attempts, log)


def sample_v22_net(k: int, model: V22Model, rng: random.Random, attempts: int = 100, log: list | None = None) -> Net:
    """A net in S^2 I (x) B* whose symmetric ambient form has rank exactly 3k + 1."""
    geo = GeometryTag.of("v22")
    geo.check_k(k)
    f = model.field
    want = target_rank(geo, k)
    if k == 1:
        for _ in range(attempts):
            n = random_net(f, "v22", k, model.grams, rng)
            if rank(ambient(n)) == want:
                return n
        raise SamplingError("no random V22 net element of full rank")
    return _pencil_root_net(f, "v22", k, model.grams, rng, 4 * k, det, attempts, log)


def sample_net(geometry, k: int, model, rng: random.Random, log: list | None = None) -> Net:
    kind = GeometryTag.of(geometry).kind
    if kind == "v5":
        return sample_v5_net(k, model, rng, log=log)
    if kind == "v22":
        return sample_v22_net(k, model, rng, log=log)
    raise ValueError("nets exist only for v5 and v22")


def net_to_monad(n: Net) -> MonadData:
    """Factor ambient(n) = C G C^t through its column space; A := C^t, D := G."""
    geo = GeometryTag.of(n.geometry)
    f = n.field
    m = ambient(n)
    want = target_rank(geo, n.k)
    c, piv = column_space_basis(m)
    if len(piv) != want:
        raise ValueError(f"net has rank {len(piv)}, expected {want}")
    sub = m.submatrix(piv, piv)
    g = sub.inverse()
    if geo.parity == "skew":
        g = -g
    d = Duality(g, geo.parity)
    a = Tensor3.from_iu_w(f, c, n.k, n.dim_u)
    out = MonadData(geo, n.k, a, d)
    if out.reassemble() != m:
        raise ArithmeticError("reassembly A D A^t != ambient(net)")
    return out


def monad_to_net(m: MonadData, grams: list[Matrix]) -> Net | None:
    """Read A D A^t back as a net, or None if it is not in the embedded net space."""
    f = m.field
    full = m.reassemble()
    du = m.a.dim_u
    k = m.dim_i
    c = [[None] * k for _ in range(k)]
    for i in range(k):
        for j in range(k):
            x = decompose_in_grams(f, ambient_block(full, i, j, du), grams)
            if x is None:
                return None
            c[i][j] = x
    try:
        return Net(f, m.geometry.kind, c, grams)
    except ValueError:
        return None


# --------------------------------------------------------------------------
# fibres and validation

_J = {"quadric": [[0, 1], [-1, 0]], "v5": [[1]], "v22": [[0, 1], [-1, 0]]}


def fiber_matrices(m: MonadData, point: XPoint) -> tuple[Matrix, Matrix]:
    """(A_x, (D A^t)_x) at a point.

    A_x: W* (x) E2_x -> I (x) E3_x has entries sum_u A[i][w][u] F_u[s][c];
    the left map is (D (x) J) A_x^t with J the self-duality of E2.
    """
    f = m.field
    kind = m.geometry.kind
    fib = fiber_eval(point, kind)
    r3, r2 = fib[0].rows, fib[0].cols
    dim_i, dim_w, dim_u = m.a.dim_i, m.a.dim_w, m.a.dim_u
    red = f.reduce
    ax = [[f.zero] * (dim_w * r2) for _ in range(dim_i * r3)]
    for i in range(dim_i):
        ai = m.a.rows[i].data
        for w in range(dim_w):
            arow = ai[w]
            for u in range(dim_u):
                coef = arow[u]
                if f.is_zero(coef):
                    continue
                fu = fib[u].data
                for s in range(r3):
                    for c in range(r2):
                        ax[i * r3 + s][w * r2 + c] += coef * fu[s][c]
    ax = Matrix._raw(f, [[red(x) for x in r] for r in ax], dim_i * r3, dim_w * r2)
    jm = Matrix(f, _J[kind])
    dj = _kron(m.d.matrix, jm)
    return ax, dj @ ax.T


def _kron(a: Matrix, b: Matrix) -> Matrix:
    f = a.field
    data = [[f.reduce(a.data[i][j] * b.data[s][t]) for j in range(a.cols) for t in range(b.cols)]
            for i in range(a.rows) for s in range(b.rows)]
    return Matrix._raw(f, data, a.rows * b.rows, a.cols * b.cols)


def expected_rank_identity(geometry) -> int:
    g = GeometryTag.of(geometry)
    r1, r2, r3 = g.bundle_ranks
    # dimW r2 - dimI (r1 + r3) is independent of k; evaluate at the smallest k
    k = g.k_range[0]
    return g.dim_w(k) * r2 - g.dim_i(k) * (r1 + r3)


@dataclass
class PointCheck:
    surjective: bool
    injective: bool
    composite_zero: bool
    cohomology_rank: int

    @property
    def ok(self) -> bool:
        return self.surjective and self.injective and self.composite_zero and self.cohomology_rank == 2


def check_point(m: MonadData, point: XPoint) -> PointCheck:
    ax, left = fiber_matrices(m, point)
    r3 = m.geometry.bundle_ranks[2]
    r1 = m.geometry.bundle_ranks[0]
    ra = rank(ax)
    rl = rank(left)
    comp = (ax @ left).is_zero()
    return PointCheck(ra == m.dim_i * r3, rl == m.dim_i * r1, comp, ax.cols - ra - rl)


@dataclass
class ValidationReport:
    geometry: str
    k: int
    dims_ok: bool
    structural_ok: bool
    points_checked: int
    cohomology_ranks: list[int]
    expected_rank_identity: int
    failures: list[dict] = dc_field(default_factory=list)
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.dims_ok and self.structural_ok and not self.failures

    def to_json(self) -> dict:
        doc = asdict(self)
        doc["passed"] = self.passed
        return doc


def structural_check(m: MonadData, model=None) -> bool:
    """Composite-zero condition on the tensor level."""
    if m.geometry.kind == "quadric":
        spin = getattr(model, "spin", None)
        return all(m.field.is_zero(x) for x in project_condition(m.a, m.d, "quadric", spin))
    if model is None:
        return True
    return monad_to_net(m, model.grams) is not None


def validate_monad(m: MonadData, model, npoints: int, rng: random.Random,
                   points: list[XPoint] | None = None) -> ValidationReport:
    pts = list(points or [])
    if model is not None and getattr(model, "seeded_points", None):
        pts = list(model.seeded_points) + pts
    while len(pts) < npoints:
        pts.append(sample_point(model, rng))
    ranks = set()
    failures = []
    for n, x in enumerate(pts):
        res = check_point(m, x)
        ranks.add(res.cohomology_rank)
        if not res.ok:
            failures.append({"index": n, "point": x.to_json(), **asdict(res)})
    note = ""
    if m.geometry.kind == "v22":
        note = "v22 points come from the linear cubic sampler; Delta-avoidance is best-effort"
    return ValidationReport(m.geometry.kind, m.k, m.dims_match_table(), structural_check(m, model), len(pts),
                            sorted(ranks), expected_rank_identity(m.geometry), failures, note)


# --------------------------------------------------------------------------
# group action


def group_act(m: MonadData, xi: Matrix, eta: Matrix) -> MonadData:
    """(xi, eta).A = xi^{-1} A eta^t."""
    dm = m.d.matrix
    if eta.T @ dm @ eta != dm:
        raise ValueError("eta does not preserve D")
    f = m.field
    xinv = xi.inverse()
    moved = [eta @ r for r in m.a.rows]
    rows = []
    for i in range(m.dim_i):
        acc = Matrix.zeros(f, m.dim_w, m.a.dim_u)
        for j in range(m.dim_i):
            c = xinv[i, j]
            if not f.is_zero(c):
                acc = acc + moved[j].scale(c)
        rows.append(acc)
    return MonadData(m.geometry, m.k, Tensor3(f, rows), m.d)


def random_invertible(field, n: int, rng: random.Random) -> Matrix:
    while True:
        g = Matrix.random(field, n, n, rng)
        if rank(g) == n:
            return g


def random_isometry(d: Duality, rng: random.Random, factors: int = 3) -> Matrix:
    """Product of reflections (symmetric D) or transvections (skew D)."""
    f = d.matrix.field
    dm = d.matrix
    n = d.dim
    out = Matrix.identity(f, n)
    done = 0
    while done < factors:
        v = Matrix(f, [[f.random(rng)] for _ in range(n)])
        dv = dm @ v
        q = (v.T @ dv)[0, 0]
        if d.parity == "symmetric":
            if f.is_zero(q):
                continue
            step = Matrix.identity(f, n) - (v @ dv.T).scale(f.div(f(2), q))
        else:
            c = f.random_nonzero(rng)
            step = Matrix.identity(f, n) + (v @ (v.T @ dm)).scale(c)
        out = out @ step
        done += 1
    return out


# --------------------------------------------------------------------------
# tangent and orbit dimensions


def _quadric_jacobian(m: MonadData, spin: SpinSplit) -> Matrix:
    f = m.field
    a = m.a.rows
    d = m.d.matrix
    k1, dw = m.dim_i, m.dim_w
    pairs = list(itertools.combinations(range(k1), 2))
    cols = []
    for i0 in range(k1):
        for w in range(dw):
            for u in range(4):
                h = Matrix.zeros(f, dw, 4)
                h.data[w][u] = f.one
                col = []
                for i, j in pairs:
                    if i == i0:
                        col.extend(pair_condition(spin, h, d, a[j]))
                    elif j == i0:
                        col.extend(pair_condition(spin, a[i], d, h))
                    else:
                        col.extend([f.zero] * 5)
                cols.append(col)
    if not pairs:
        return Matrix.zeros(f, 0, len(cols))
    return Matrix.from_columns(f, cols)


def _quadric_orbit_matrix(m: MonadData) -> Matrix:
    f = m.field
    k1, dw = m.dim_i, m.dim_w
    dm = m.d.matrix
    vecs = []
    for i, j in itertools.product(range(k1), repeat=2):
        # -xi A with xi = E_ij
        rows = [Matrix.zeros(f, dw, 4) for _ in range(k1)]
        rows[i] = -m.a.rows[j]
        vecs.append(Tensor3(f, rows).to_vector())
    # so(W, D): eta^t D + D eta = 0
    eqs = []
    for r, c in itertools.product(range(dw), repeat=2):
        row = [f.zero] * (dw * dw)
        for s in range(dw):
            # (eta^t D)_{rc} = sum_s eta_{sr} D_{sc}; (D eta)_{rc} = sum_s D_{rs} eta_{sc}
            row[s * dw + r] = f.add(row[s * dw + r], dm[s, c])
            row[s * dw + c] = f.add(row[s * dw + c], dm[r, s])
        eqs.append(row)
    so = kernel_basis(Matrix(f, eqs))
    for col in so.columns():
        eta = Matrix(f, [col[r * dw:(r + 1) * dw] for r in range(dw)])
        vecs.append(Tensor3(f, [eta @ ai for ai in m.a.rows]).to_vector())
    return Matrix.from_columns(f, vecs)


def _net_tangent_matrix(n: Net) -> Matrix:
    f = n.field
    kmat = kernel_basis(ambient(n))
    nd = net_dimension(n.k, n.dim_b)
    cols = []
    for t in range(nd):
        e = [f.zero] * nd
        e[t] = f.one
        a = ambient(Net.from_coordinates(f, n.geometry, n.k, n.grams, e))
        r = kmat.T @ a @ kmat
        cols.append([x for row in r.data for x in row])
    if kmat.cols == 0:
        return Matrix.zeros(f, 0, nd)
    return Matrix.from_columns(f, cols)


def _net_orbit_matrix(n: Net) -> Matrix:
    f = n.field
    k = n.k
    mats = [n.coefficient_matrix(b) for b in range(n.dim_b)]
    cols = []
    for i, j in itertools.product(range(k), repeat=2):
        xi = Matrix.zeros(f, k, k)
        xi.data[i][j] = f.one
        moved = [xi @ c + c @ xi.T for c in mats]
        cols.append(Net.from_matrices(f, n.geometry, moved, n.grams).coordinates())
    return Matrix.from_columns(f, cols)


def tangent_dimension(obj, spin: SpinSplit | None = None) -> int:
    if isinstance(obj, Net):
        return net_dimension(obj.k, obj.dim_b) - rank(_net_tangent_matrix(obj))
    spin = spin or build_spin_split(obj.field)
    jac = _quadric_jacobian(obj, spin)
    return jac.cols - rank(jac)


def orbit_dimension(obj) -> int:
    if isinstance(obj, Net):
        return rank(_net_orbit_matrix(obj))
    return rank(_quadric_orbit_matrix(obj))


def generic_tangent(geometry, k: int) -> int:
    kind = GeometryTag.of(geometry).kind
    if kind == "quadric":
        return 4 * k * (k - 1) - 5 * comb(k - 1, 2)
    if kind == "v5":
        return 3 * comb(k + 1, 2) - comb(k - 2, 2)
    return 3 * comb(k + 1, 2) - comb(k, 2)


def group_dimension(geometry, k: int) -> int:
    if GeometryTag.of(geometry).kind == "quadric":
        return (k - 1) ** 2 + comb(k, 2)
    return k * k


@dataclass
class DeltaTrial:
    trial: int
    tangent_dim: int
    orbit_dim: int
    delta: int
    certified: bool
    resamples: int


@dataclass
class DeltaReport:
    geometry: str
    k: int
    expected_delta: int
    prime: int
    seed: int
    trials: list[DeltaTrial]

    @property
    def certified(self) -> list[DeltaTrial]:
        return [t for t in self.trials if t.certified]

    @property
    def all_match(self) -> bool:
        good = self.certified
        return bool(good) and all(t.delta == self.expected_delta for t in good)

    def to_json(self) -> dict:
        good = self.certified
        first = good[0] if good else None
        return {
            "geometry": self.geometry,
            "k": self.k,
            "prime": self.prime,
            "seed": self.seed,
            "expected_delta": self.expected_delta,
            "tangent_dim": first.tangent_dim if first else None,
            "orbit_dim": first.orbit_dim if first else None,
            "delta": first.delta if first else None,
            "certified_trials": len(good),
            "all_match": self.all_match,
            "trials": [asdict(t) for t in self.trials],
            "note": "delta is the dimension of a component through the sampled points",
        }


def trial_rng(seed: int, trial: int) -> random.Random:
    return random.Random(seed * 1000003 + trial)


def delta_trial(geometry, k: int, field, model, trial: int, seed: int, max_resamples: int = 5) -> DeltaTrial:
    geo = GeometryTag.of(geometry)
    rng = trial_rng(seed, trial)
    # a sample is certified once G_k acts on it with a finite stabiliser;
    # the tangent dimension is then reported as measured
    want_o = group_dimension(geo, k)
    t = o = -1
    for attempt in range(max_resamples):
        if geo.kind == "quadric":
            obj = sample_quadric_monad(k, field, rng)
        else:
            obj = sample_net(geo, k, model, rng)
        t = tangent_dimension(obj, getattr(model, "spin", None))
        o = orbit_dimension(obj)
        if o == want_o:
            return DeltaTrial(trial, t, o, t - o, True, attempt)
    return DeltaTrial(trial, t, o, t - o, False, max_resamples)


def delta_check(geometry, k: int, trials: int, field, seed: int, model=None, jobs: int = 1) -> DeltaReport:
    geo = GeometryTag.of(geometry)
    geo.check_k(k)
    if model is None:
        model = build_model(geo, field, random.Random(seed))
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futs = [pool.submit(delta_trial, geo.kind, k, field, model, t, seed) for t in range(trials)]
            results = [fu.result() for fu in futs]
    else:
        results = [delta_trial(geo, k, field, model, t, seed) for t in range(trials)]
    results.sort(key=lambda r: r.trial)
    return DeltaReport(geo.kind, k, geo.expected_delta(k), field.characteristic, seed, results)

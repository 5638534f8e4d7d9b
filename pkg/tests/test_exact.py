import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fanomonads.exact import Matrix, MultiPoly, det, kernel_basis, pfaffian, poly_det, rank
from fanomonads.exact.field import PrimeField, Rationals
from fanomonads.exact.matrix import bareiss_det_int, solve
from fanomonads.exact.univariate import interpolate, is_squarefree, roots_in_field

F101 = PrimeField(101)
FP = PrimeField(32003)


def cofactor_det(field, rows):
    """Laplace expansion along the first row; only for small n."""
    n = len(rows)
    if n == 0:
        return field.one
    total = field.zero
    for j in range(n):
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = field.mul(rows[0][j], cofactor_det(field, minor))
        total = field.sub(total, term) if j % 2 else field.add(total, term)
    return total


def minor_rank(field, m: Matrix) -> int:
    """Largest r with a nonzero r x r minor."""
    for r in range(min(m.rows, m.cols), 0, -1):
        for rs in itertools.combinations(range(m.rows), r):
            for cs in itertools.combinations(range(m.cols), r):
                sub = [[m[i, j] for j in cs] for i in rs]
                if not field.is_zero(cofactor_det(field, sub)):
                    return r
    return 0


def test_rank_trivial_cases():
    assert rank(Matrix.identity(F101, 3)) == 3
    assert rank(Matrix.zeros(F101, 4, 5)) == 0


def test_rank_with_repeated_row_matches_minor_oracle():
    rng = random.Random(11)
    m = Matrix.random(F101, 6, 6, rng)
    m.data[4] = list(m.data[1])
    r = rank(m)
    assert r <= 5
    assert r == minor_rank(F101, m)


@pytest.mark.parametrize("shape", [(3, 5), (5, 3), (4, 4)])
def test_rank_matches_minor_oracle_low_rank(shape):
    rng = random.Random(sum(shape))
    a = Matrix.random(F101, shape[0], 2, rng)
    b = Matrix.random(F101, 2, shape[1], rng)
    m = a @ b
    assert rank(m) == minor_rank(F101, m)


def test_kernel_examples():
    assert kernel_basis(Matrix.identity(F101, 4)).cols == 0
    a, b = F101(3), F101(7)
    k = kernel_basis(Matrix(F101, [[a, b]]))
    assert k.cols == 1
    x, y = k[0, 0], k[1, 0]
    assert F101.is_zero(F101.sub(F101.mul(x, 1), F101.mul(y, F101.neg(F101.div(b, a)))))


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 6), st.integers(1, 7), st.integers(0, 10**6))
def test_rank_nullity_and_kernel_property(r, c, seed):
    rng = random.Random(seed)
    m = Matrix.random(F101, r, c, rng)
    if seed % 3 == 0 and r > 1:
        m.data[-1] = list(m.data[0])
    k = kernel_basis(m)
    assert rank(m) + k.cols == c
    assert (m @ k).is_zero() if k.cols else True


def test_det_identity_and_oracle():
    assert det(Matrix.identity(FP, 5)) == 1
    rng = random.Random(3)
    for n in range(1, 6):
        m = Matrix.random(F101, n, n, rng)
        assert det(m) == cofactor_det(F101, m.data)


def test_det_over_rationals_matches_bareiss():
    q = Rationals()
    rows = [[2, -1, 0, 3], [1, 1, 4, -2], [0, 5, -3, 1], [7, 0, 2, 2]]
    m = Matrix(q, [[Fraction(x) for x in r] for r in rows])
    assert det(m) == Fraction(bareiss_det_int(rows))
    assert det(m) == cofactor_det(q, m.data)


def test_pfaffian_examples():
    a = F101(17)
    assert pfaffian(Matrix(F101, [[0, a], [F101.neg(a), 0]])) == a
    rng = random.Random(5)
    for _ in range(5):
        x = Matrix.random(F101, 6, 6, rng)
        s = x - x.T
        pf = pfaffian(s)
        assert F101.mul(pf, pf) == det(s)


def test_solve_and_inverse():
    rng = random.Random(8)
    m = Matrix.random(FP, 5, 5, rng)
    x = [FP.random(rng) for _ in range(5)]
    b = m.apply(x)
    assert solve(m, b) == x
    assert m @ m.inverse() == Matrix.identity(FP, 5)
    singular = Matrix(FP, [[1, 2], [2, 4]])
    assert solve(singular, [1, 0]) is None


def test_poly_det_small_examples():
    x, y = MultiPoly.var(FP, 2, 0), MultiPoly.var(FP, 2, 1)
    zero = MultiPoly.zero(FP, 2)
    assert poly_det([[x, zero], [zero, y]]) == x * y
    assert poly_det([[x, y], [y, x]]) == x * x - y * y


@pytest.mark.parametrize("n", [4, 7])
def test_poly_det_scalar_evaluation_oracle(n):
    rng = random.Random(n)
    entries = [[MultiPoly.linear_form(FP, [FP.random(rng) for _ in range(3)]) for _ in range(n)] for _ in range(n)]
    d = poly_det(entries)
    assert d.is_homogeneous() and d.degree() == n
    for _ in range(20):
        pt = [FP.random(rng) for _ in range(3)]
        scalar = Matrix(FP, [[e.evaluate(pt) for e in row] for row in entries])
        assert d.evaluate(pt) == det(scalar)


def test_univariate_roots_and_squarefree():
    f = PrimeField(101)
    # (x - 2)(x - 5)(x + 1)
    xs = [0, 1, 3, 4]
    ys = [f((x - 2) * (x - 5) * (x + 1)) for x in xs]
    coeffs = interpolate(f, xs, ys)
    assert sorted(roots_in_field(f, coeffs)) == [2, 5, 100]
    assert is_squarefree(f, coeffs)
    assert not is_squarefree(f, [f(4), f(-4), f(1)])  # (x - 2)^2


def test_field_rejects_composite():
    with pytest.raises(ValueError):
        PrimeField(15)

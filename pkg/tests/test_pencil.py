import random

import pytest

from fanomonads.exact import Matrix, MultiPoly
from fanomonads.exact.field import PrimeField
from fanomonads.invariants import random_symmetric
from fanomonads.monads import random_invertible
from fanomonads.pencil import Pencil, branch_points, branch_sextic, is_smooth_pencil

F = PrimeField(32003)


def diag_pencil(values):
    return Pencil(Matrix.identity(F, 6), Matrix.diag(F, [F(v) for v in values]))


def test_diagonal_pencil_is_smooth():
    p = diag_pencil(range(6))
    lam, mu = MultiPoly.var(F, 2, 0), MultiPoly.var(F, 2, 1)
    expected = MultiPoly.constant(F, 2, 1)
    for i in range(6):
        expected = expected * (lam + mu * i)
    assert branch_sextic(p) == expected
    assert is_smooth_pencil(p)
    assert len(branch_points(p)) == 6


def test_repeated_eigenvalue_detected():
    assert not is_smooth_pencil(diag_pencil([0, 0, 1, 2, 3, 4]))


def test_root_at_infinity():
    # Q1 singular: the member mu = 0 is degenerate
    q1 = Matrix.diag(F, [0, 1, 1, 1, 1, 1])
    q2 = Matrix.diag(F, [1, 1, 2, 3, 4, 5])
    p = Pencil(q1, q2)
    assert is_smooth_pencil(p)
    assert (1, 0) in branch_points(p)
    q1 = Matrix.diag(F, [0, 0, 1, 1, 1, 1])
    assert not is_smooth_pencil(Pencil(q1, q2))


def test_proportional_pencil_rejected():
    q = Matrix.identity(F, 6)
    with pytest.raises(ValueError):
        Pencil(q, q.scale(3))


def test_non_symmetric_rejected():
    q = Matrix.identity(F, 6)
    bad = q.copy()
    bad[0, 1] = 1
    with pytest.raises(ValueError):
        Pencil(q, bad)


def test_congruence_covariance():
    rng = random.Random(1)
    for _ in range(10):
        p = Pencil(random_symmetric(F, 6, rng), random_symmetric(F, 6, rng))
        g = random_invertible(F, 6, rng)
        d2 = F.mul(g.det(), g.det())
        s = branch_sextic(p)
        moved = branch_sextic(p.congruent(g))
        assert moved == s * d2

import random

import pytest

from fanomonads.exact import Matrix, rank
from fanomonads.exact.field import PrimeField
from fanomonads.models import GeometryTag, QuadricModel, build_v22_model, build_v5_model
from fanomonads.monads import (
    MonadData,
    check_point,
    delta_check,
    expected_rank_identity,
    group_act,
    monad_to_net,
    net_to_monad,
    orbit_dimension,
    random_invertible,
    random_isometry,
    sample_degenerate_quadric_monad,
    sample_quadric_monad,
    sample_v22_net,
    sample_v5_net,
    tangent_dimension,
    validate_monad,
)
from fanomonads.exact import pfaffian
from fanomonads.tensors import ambient, project_condition
from fanomonads.invariants import dd_invariant

F = PrimeField(32003)


@pytest.fixture(scope="module")
def v5():
    return build_v5_model(F, random.Random(21))


@pytest.fixture(scope="module")
def v22():
    return build_v22_model(F, random.Random(22))


def test_rank_identity_arithmetic():
    assert [expected_rank_identity(g) for g in ("quadric", "v5", "v22")] == [2, 2, 2]
    for k in range(2, 10):
        assert k * 2 - (k - 1) * 2 == 2
        assert (4 * k + 2) - 4 * k == 2
        assert (3 * k + 1) * 2 - 6 * k == 2


@pytest.mark.parametrize("k", [2, 3, 4, 5, 6])
def test_quadric_sampler_solves_equations(k):
    m = sample_quadric_monad(k, F, random.Random(k))
    assert m.dims_match_table()
    vals = project_condition(m.a, m.d, "quadric")
    assert len(vals) == 5 * (k - 1) * (k - 2) // 2
    assert all(v == 0 for v in vals)
    assert dd_invariant(m.a, m.d) != 0


def test_quadric_k3_condition_space():
    from fanomonads.monads import quadric_row_conditions
    from fanomonads.tensors import build_spin_split

    spin = build_spin_split(F)
    rng = random.Random(3)
    a1 = Matrix.random(F, 3, 4, rng)
    c = quadric_row_conditions(spin, [a1], Matrix.identity(F, 3), 3)
    assert c.shape == (5, 12)
    assert c.cols - rank(c) == 7


def test_quadric_validation_at_200_points():
    m = sample_quadric_monad(3, F, random.Random(31))
    rep = validate_monad(m, QuadricModel.build(F), 200, random.Random(32))
    assert rep.passed
    assert rep.cohomology_ranks == [2]


@pytest.mark.parametrize("k", [2, 3, 4, 5, 6])
def test_degenerate_quadric_fails_at_its_point(k):
    m, x = sample_degenerate_quadric_monad(k, F, random.Random(100 + k))
    assert all(v == 0 for v in project_condition(m.a, m.d, "quadric"))
    res = check_point(m, x)
    assert not res.surjective
    assert not res.ok


def test_v5_samplers(v5):
    rng = random.Random(5)
    n2 = sample_v5_net(2, v5, rng)
    assert rank(ambient(n2)) == 10
    n3 = sample_v5_net(3, v5, rng)
    assert rank(ambient(n3)) == 14
    log = []
    n4 = sample_v5_net(4, v5, rng, log=log)
    amb = ambient(n4)
    assert pfaffian(amb) == 0 and rank(amb) == 18
    assert all("roots" in entry for entry in log)


def test_v22_samplers(v22):
    rng = random.Random(6)
    n1 = sample_v22_net(1, v22, rng)
    assert ambient(n1).det() != 0
    n2 = sample_v22_net(2, v22, rng)
    assert rank(ambient(n2)) == 7


@pytest.mark.parametrize("geometry,k", [("v5", 2), ("v5", 3), ("v5", 4), ("v22", 1), ("v22", 2)])
def test_net_to_monad_reassembles(v5, v22, geometry, k):
    model = v5 if geometry == "v5" else v22
    rng = random.Random(k)
    n = sample_v5_net(k, model, rng) if geometry == "v5" else sample_v22_net(k, model, rng)
    m = net_to_monad(n)
    assert m.reassemble() == ambient(n)
    assert m.d.parity == GeometryTag.of(geometry).parity
    assert m.dim_w == (4 * k + 2 if geometry == "v5" else 3 * k + 1)
    back = monad_to_net(m, model.grams)
    assert back is not None and back.coordinates() == n.coordinates()


def test_monad_json_round_trip():
    m = sample_quadric_monad(4, F, random.Random(7))
    back = MonadData.from_json(m.to_json())
    assert back.a == m.a and back.d.matrix == m.d.matrix and back.k == 4


def test_group_action_identity_and_invariance():
    rng = random.Random(8)
    m = sample_quadric_monad(4, F, rng)
    same = group_act(m, Matrix.identity(F, 3), Matrix.identity(F, 4))
    assert same.a == m.a
    moved = group_act(m, random_invertible(F, 3, rng), random_isometry(m.d, rng))
    assert all(v == 0 for v in project_condition(moved.a, moved.d, "quadric"))


def test_group_act_rejects_non_isometry():
    m = sample_quadric_monad(3, F, random.Random(9))
    bad = Matrix.identity(F, 3).scale(2)
    with pytest.raises(ValueError):
        group_act(m, Matrix.identity(F, 2), bad)


def test_quadric_k2_dimensions():
    m = sample_quadric_monad(2, F, random.Random(10))
    assert tangent_dimension(m) == 8
    assert orbit_dimension(m) == 2


def test_delta_small_cases(v5, v22):
    assert delta_check("quadric", 2, 2, F, 1).to_json()["delta"] == 6
    assert delta_check("v5", 2, 2, F, 1, model=v5).to_json()["delta"] == 5
    assert delta_check("v22", 1, 2, F, 1, model=v22).to_json()["delta"] == 2


def test_delta_rejects_unsupported_k():
    with pytest.raises(ValueError, match="2..4"):
        delta_check("v5", 5, 1, F, 0)

import pytest
import sympy

from fanomonads.hilbert import chi_bundle, chi_instanton, chi_monad, t


def test_instanton_chi_at_zero():
    for k in range(2, 8):
        assert chi_instanton("quadric", k).eval(0) == 1 - k
        assert chi_instanton("v5", k).eval(0) == 2 - k
        assert chi_instanton("v22", k + 7).eval(0) == 0


def test_bundle_values():
    assert chi_bundle("quadric", "O", 1) == 5
    assert chi_bundle("quadric", "O", 0) == 1
    assert chi_bundle("quadric", "S", -1) == 0
    assert chi_bundle("quadric", "S", 0) == 0
    # S has rank 2 and 4 sections; S* = S(1)
    assert chi_bundle("quadric", "S", 1) == 4
    assert chi_bundle("v5", "O", 1) == 7  # h^0(O(1)) = 7 on V5 in P^6
    assert chi_bundle("v5", "U*", 0) == 5


def test_spinor_leading_term():
    # rank 2 on a quadric of degree 2: leading coefficient 2 * 2 / 3!
    assert chi_bundle("quadric", "S").LC() == sympy.Rational(2, 3)


@pytest.mark.parametrize("k", range(2, 10))
def test_quadric_identity(k):
    assert chi_monad("quadric", k) == chi_instanton("quadric", k)


@pytest.mark.parametrize("k", range(2, 7))
def test_v5_identity(k):
    assert chi_monad("v5", k) == chi_instanton("v5", k)


def test_v22_bundles_excluded():
    with pytest.raises(ValueError):
        chi_monad("v22", 2)
    with pytest.raises(ValueError):
        chi_bundle("v22", "O", 0)


def test_unknown_bundle_tag():
    with pytest.raises(ValueError):
        chi_bundle("quadric", "U")


def test_polynomial_variable():
    assert chi_instanton("quadric", 3).gens == (t,)

import random

import pytest
from hypothesis import given, strategies as st

from fcompat.frobenius import (CartierData, bracket_power, bracket_power_of_generators, cartier_multiplier,
                               colon_identity, intersection_identity, pe_th_root, root_components)
from fcompat.groebner import Ideal, contains
from fcompat.poly import Ring
from fcompat.sampling import random_ideal, random_polynomial


def test_bracket_examples():
    R = Ring(2, ["x", "y"])
    assert bracket_power(Ideal.parse(R, "x + y"), 1) == Ideal.parse(R, "x^2 + y^2")
    assert bracket_power(Ideal.parse(R, "x, y"), 2) == Ideal.parse(R, "x^4, y^4")


def test_root_examples():
    R = Ring(2, ["x", "y"])
    assert pe_th_root(Ideal.parse(R, "x^2*y"), 1) == Ideal.parse(R, "x")
    assert pe_th_root(Ideal.parse(R, "x^3 + y^2"), 1) == Ideal.parse(R, "x, y")
    R3 = Ring(3, ["x"])
    assert pe_th_root(Ideal.parse(R3, "x^5"), 1) == Ideal.parse(R3, "x")


def test_root_components_reassemble():
    rng = random.Random(2)
    for p in (2, 3):
        R = Ring(p, ["x", "y", "z"])
        for _ in range(20):
            f = random_polynomial(R, rng, max_deg=6, max_terms=5)
            for e in (1, 2):
                total = R.zero()
                for alpha, g in root_components(f, e).items():
                    assert all(a < p**e for a in alpha)
                    total = total + g.frobenius(e) * R.monomial(alpha)
                assert total == f


@pytest.mark.parametrize("p", [2, 3])
def test_bracket_shortcut_matches_buchberger(p):
    rng = random.Random(p)
    R = Ring(p, ["x", "y", "z"])
    for _ in range(15):
        I = random_ideal(R, rng)
        for e in (1, 2):
            direct = bracket_power_of_generators(I, e)
            assert bracket_power(I, e).gb == direct.gb


@given(st.integers(0, 100_000), st.sampled_from([2, 3]), st.integers(1, 2))
def test_root_bracket_adjunction(seed, p, e):
    """root(J) ⊆ I iff J ⊆ I^[q]; in particular root(I^[q]) = I."""
    rng = random.Random(seed)
    R = Ring(p, ["x", "y"])
    I, J = random_ideal(R, rng, max_deg=2), random_ideal(R, rng, max_deg=3)
    assert pe_th_root(bracket_power(I, e), e) == I
    assert contains(I, pe_th_root(J, e)) == contains(bracket_power(I, e), J)
    assert contains(bracket_power(pe_th_root(J, e), e), J)


@given(st.integers(0, 100_000), st.sampled_from([2, 3]))
def test_identity_suite(seed, p):
    rng = random.Random(seed)
    R = Ring(p, ["x", "y", "z"])
    I, J = random_ideal(R, rng, max_deg=2), random_ideal(R, rng, max_deg=2)
    for e in (1, 2):
        assert intersection_identity(I, J, e)
        assert colon_identity(I, J, e)


def test_cartier_levels_descend():
    R = Ring(2, ["x", "y"])
    A = Ideal.parse(R, "x*y")
    data = CartierData(A, 2)
    assert data.level(1) == cartier_multiplier(A, 1)
    assert data.level(1) == Ideal.parse(R, "x*y")
    assert cartier_multiplier(Ideal.zero(R), 1).is_unit()
    # C_{e+1} ⊆ C_e^[p] : compatible with composition of maps
    assert contains(data.level(1), data.level(2)) or contains(data.level(2), data.level(1))


def test_e_must_be_positive():
    R = Ring(2, ["x"])
    with pytest.raises(ValueError):
        bracket_power(Ideal.parse(R, "x"), 0)
    with pytest.raises(ValueError):
        pe_th_root(Ideal.parse(R, "x"), 0)

import itertools
import random

import pytest
from hypothesis import given, strategies as st

from fcompat.errors import PreconditionError
from fcompat.factor import (berlekamp_factor, factor, factor_dense, is_irreducible_dense, mul, squarefree_part,
                            trim)
from fcompat.poly import Ring


def brute_irreducible(f, p):
    """No monic factor of degree 1..deg/2, by trial over all candidates."""
    from fcompat.factor import divmod_
    n = len(f) - 1
    for d in range(1, n // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            g = list(tail) + [1]
            if not any(divmod_(f, g, p)[1]):
                return False
    return True


@pytest.mark.parametrize("p", [2, 3, 5])
def test_irreducibility_exhaustive_low_degree(p):
    for n in (2, 3, 4):
        for tail in itertools.product(range(p), repeat=n):
            f = list(tail) + [1]
            assert is_irreducible_dense(f, p) == brute_irreducible(f, p)


def test_examples():
    R = Ring(2, ["x"])
    fac = factor(R.parse("x^2 + 1"))
    assert [(str(g), k) for g, k in fac.factors] == [("x + 1", 2)]
    R3 = Ring(3, ["t"])
    fac = factor(R3.parse("t^3 - t"))
    assert sorted(str(g) for g, _ in fac.factors) == ["t", "t + 1", "t + 2"]
    assert len(berlekamp_factor(Ring(2, ["x"]).parse("x^4 + x + 1"))) == 1


def test_squarefree_part_inseparable():
    R = Ring(3, ["x"])
    f = R.parse("x^3 + 1")  # (x + 1)^3 in characteristic 3
    assert squarefree_part(f) == R.parse("x + 1")


def test_rejects_multivariate_and_zero():
    R = Ring(3, ["x", "y"])
    with pytest.raises(PreconditionError):
        factor(R.parse("x*y + 1"))
    with pytest.raises(PreconditionError):
        factor(R.zero())


@given(st.sampled_from([2, 3, 5, 7]), st.lists(st.integers(0, 6), min_size=2, max_size=9), st.integers(1, 6))
def test_factorization_multiplies_back(p, coeffs, lead):
    f = trim([c % p for c in coeffs[:-1]] + [lead % p or 1])
    if len(f) < 2:
        return
    unit, facs = factor_dense(f, p)
    prod = [unit]
    for g, k in facs:
        assert is_irreducible_dense(g, p) and g[-1] == 1
        for _ in range(k):
            prod = mul(prod, g, p)
    assert trim(prod) == f


def test_random_products_recover_factors():
    rng = random.Random(1)
    R = Ring(5, ["x"])
    for _ in range(10):
        a = R.from_dict({(i,): rng.randrange(5) for i in range(3)} | {(3,): 1})
        b = R.from_dict({(i,): rng.randrange(5) for i in range(2)} | {(2,): 1})
        fac = factor(a * b)
        assert fac.product() == a * b

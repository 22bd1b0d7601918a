import pytest
from hypothesis import given, strategies as st

from fcompat.errors import ExponentOverflowError, ParseError, RingMismatchError
from fcompat.poly import FpElement, Ring, TermOrder, format_polynomial, inverse_mod, is_prime, parse_polynomial

PRIMES = [p for p in range(2, 18) if is_prime(p)]


def test_parse_literal(r2):
    f = r2.parse("x*y")
    assert f.items() == [((1, 1), 1)] or dict(f.items()) == {(1, 1): 1}


def test_parse_reduces_coefficients():
    R = Ring(3, ["x", "y"])
    assert R.parse("3*x + y") == R.parse("y")
    S = Ring(2, ["x"])
    assert S.parse("x^2 + 2*x + 1") == S.parse("x^2 + 1")


@pytest.mark.parametrize("text", ["x y", "2x", "-x + y", "x*y^0", "  x  "])
def test_parse_accepts_juxtaposition_and_signs(r3, text):
    assert r3.parse(text) is not None


@pytest.mark.parametrize("text", ["x +", "x^", "x**2", "(x)", "x^-1", "*x"])
def test_parse_rejects_bad_syntax(r2, text):
    with pytest.raises(ParseError) as err:
        r2.parse(text)
    assert err.value.position is not None


def test_parse_unknown_variable(r2):
    with pytest.raises(ParseError):
        r2.parse("x*w")


def test_parse_exponent_overflow(r2):
    with pytest.raises(ExponentOverflowError):
        r2.parse("x^99999999999")


def test_arithmetic_examples():
    R2 = Ring(2, ["x", "y"])
    s = R2.parse("x + y")
    assert s * s == R2.parse("x^2 + y^2")
    assert (s - s).is_zero()
    R3 = Ring(3, ["x"])
    assert R3.parse("x + 1") * R3.parse("x + 2") == R3.parse("x^2 + 2")


def test_ring_mismatch():
    with pytest.raises(RingMismatchError):
        Ring(2, ["x"]).parse("x") + Ring(3, ["x"]).parse("x")


def test_frobenius_examples():
    R2 = Ring(2, ["x", "y"])
    assert R2.parse("x + y").frobenius(1) == R2.parse("x^2 + y^2")
    assert R2.parse("x*y").frobenius(2) == R2.parse("x^4*y^4")
    R3 = Ring(3, ["x"])
    assert R3.parse("x + 1").frobenius(1) == R3.parse("x^3 + 1")


def test_frobenius_overflow():
    R = Ring(2, ["x"])
    with pytest.raises(ExponentOverflowError):
        R.parse("x^1000000").frobenius(20)


def test_printing_is_descending(r3):
    assert format_polynomial(r3.parse("1 + y + x^2 + 2*x*y")) == "x^2 + 2*x*y + y + 1"
    assert format_polynomial(r3.zero()) == "0"


def test_term_orders():
    lex = Ring(2, ["x", "y"], "lex")
    grevlex = Ring(2, ["x", "y"])
    assert format_polynomial(lex.parse("y^3 + x")) == "x + y^3"
    assert format_polynomial(grevlex.parse("y^3 + x")) == "y^3 + x"
    block = Ring(2, ["t", "x", "y"], TermOrder("block", 1))
    assert format_polynomial(block.parse("x^5 + t")) == "t + x^5"


@pytest.mark.parametrize("p", PRIMES)
def test_field_inverses_exhaustive(p):
    for a in range(1, p):
        assert a * inverse_mod(a, p) % p == 1
        x = FpElement(a, p)
        assert x * x.inverse() == FpElement(1, p)


@pytest.mark.parametrize("p", PRIMES)
def test_field_axioms_exhaustive(p):
    els = [FpElement(a, p) for a in range(p)]
    zero, one = els[0], els[1]
    for a in els:
        assert a + zero == a and a * one == a
        assert a + (-a) == zero
        for b in els:
            assert a + b == b + a and a * b == b * a


def test_field_rejects_composite():
    with pytest.raises(ValueError):
        Ring(4, ["x"])


monomials = st.tuples(st.integers(0, 4), st.integers(0, 4), st.integers(0, 4))


def polys(p):
    return st.dictionaries(monomials, st.integers(0, p - 1), max_size=5).map(
        lambda d: Ring(p, ["x", "y", "z"]).from_dict(d))


@given(st.sampled_from([2, 3, 5]).flatmap(lambda p: st.tuples(polys(p), polys(p))), st.integers(1, 2))
def test_frobenius_is_ring_map(pair, e):
    f, g = pair
    assert (f * g).frobenius(e) == f.frobenius(e) * g.frobenius(e)
    assert (f + g).frobenius(e) == f.frobenius(e) + g.frobenius(e)
    assert f.frobenius(e) == f ** (f.ring.p ** e)
    assert len(f.frobenius(e).terms) == len(f.terms)


@given(st.sampled_from([2, 3, 7]).flatmap(polys))
def test_print_parse_round_trip(f):
    assert parse_polynomial(format_polynomial(f), f.ring) == f


@given(st.sampled_from([2, 5]).flatmap(lambda p: st.tuples(polys(p), polys(p), polys(p))))
def test_ring_axioms(triple):
    f, g, h = triple
    assert f * (g + h) == f * g + f * h
    assert (f * g) * h == f * (g * h)
    assert f - f == f.ring.zero()

import random

import pytest
from hypothesis import given, strategies as st

from conftest import load_corpus
from fcompat import fsing
from fcompat.errors import InvariantError, NotFPureError, PreconditionError
from fcompat.groebner import Ideal, contains
from fcompat.poly import Ring


def I(pres, text):
    return Ideal.parse(pres.ring, text).canonical()


def texts(ideals):
    return sorted(str(J) for J in ideals)


def test_fedder_verdicts():
    assert fsing.fedder_is_f_pure(load_corpus("node_p3"))
    assert fsing.fedder_is_f_pure(load_corpus("whitney_umbrella_p5"))
    assert not fsing.fedder_is_f_pure(load_corpus("x2"))


@pytest.mark.parametrize("name", ["x2", "fermat_cubic_p2"])
def test_non_fpure_rings_are_refused(name):
    pres = load_corpus(name)
    for op in (fsing.big_test_ideal, fsing.compatible_ideals, fsing.splitting_prime, fsing.big_test_chain):
        with pytest.raises(NotFPureError):
            op(pres)
    with pytest.raises(NotFPureError):
        fsing.is_compatible(pres, pres.M)


def test_presentation_rejects_generator_off_origin():
    R = Ring(3, ["x"])
    with pytest.raises(PreconditionError):
        fsing.Presentation(R, "x + 1")


def test_node_compatibility_examples(node2):
    assert fsing.is_compatible(node2, I(node2, "x"))
    assert fsing.is_compatible(node2, I(node2, "x, y"))
    assert not fsing.is_compatible(node2, I(node2, "x + y"))
    assert not fsing.is_compatible(node2, I(node2, "x^2, y"))
    assert fsing.colon_levels(node2, I(node2, "x + y")) == fsing.cartier_levels(node2, I(node2, "x + y"))


def test_star_closure_and_test_ideal(node2):
    assert fsing.star_closure(node2, I(node2, "x + y")) == I(node2, "x, y")
    assert fsing.star_closure(node2, I(node2, "x")) == I(node2, "x")
    assert fsing.big_test_ideal(node2) == I(node2, "x, y")


def test_test_element_lies_outside_minimal_primes(node2):
    mins = fsing.local_minimal_primes(node2.A)
    for c in fsing.test_element_candidates(node2, mins):
        assert all(c not in P for P in mins)


def test_stanley_reisner_lattice():
    pres = load_corpus("stanley_reisner_p2")
    lattice = fsing.compatible_ideals(pres)
    assert texts(lattice.proper_members()) == texts([I(pres, "x"), I(pres, "x*y, x*z"), I(pres, "y, z"),
                                                      I(pres, "x, y, z")])
    assert not fsing.is_compatible(pres, I(pres, "x, y"))
    assert fsing.splitting_prime(pres, lattice) == pres.M


def test_umbrella_and_cubic():
    umb = load_corpus("whitney_umbrella_p5")
    assert texts(fsing.compatible_primes(umb)) == texts([umb.A, I(umb, "x, z")])
    cubic = load_corpus("fermat_cubic_p7")
    assert texts(fsing.compatible_ideals(cubic).proper_members()) == texts([cubic.A, cubic.M])


def test_coordinate_cross_chain():
    pres = load_corpus("coordinate_cross_p3")
    chain = fsing.big_test_chain(pres)
    assert chain.length == 2 and all(chain.fpure)
    assert chain.stages[1] == I(pres, "x*y, x*z, y*z")


def test_s_test_ideal(node2):
    lattice = fsing.compatible_ideals(node2)
    assert fsing.s_test_ideal(node2, lattice, [I(node2, "x")]) == I(node2, "y")
    assert fsing.s_test_ideal(node2, lattice, [I(node2, "x"), I(node2, "y")]) == I(node2, "x, y")
    assert fsing.s_test_ideal(node2, lattice, []) == node2.A
    with pytest.raises(PreconditionError):
        fsing.s_test_ideal(node2, lattice, [I(node2, "x*y")])


def test_localize_requires_lattice_prime(node2):
    lattice = fsing.compatible_ideals(node2)
    with pytest.raises(PreconditionError):
        fsing.localize_compatible(node2, lattice, I(node2, "x + y, x*y"))


def test_quotient_report(node2):
    lattice = fsing.compatible_ideals(node2)
    rep = fsing.verify_quotient(node2, lattice, I(node2, "x"))
    assert rep.ok and texts(rep.primes) == texts([I(node2, "x")])
    assert rep.big_test_ideal.is_unit()
    with pytest.raises(PreconditionError):
        fsing.verify_quotient(node2, lattice, I(node2, "x + y"))


def test_splitting_prime_inside_level_sets(node2):
    Q = fsing.splitting_prime(node2)
    for L in fsing.fedder_level_sets(node2):
        assert fsing.local_contains(L, Q)
    assert fsing.local_contains(fsing.aberbach_enescu_bound(node2), Q)


def test_local_containment():
    R = Ring(3, ["x", "y"])
    unit_away = Ideal.parse(R, "x*y + x")
    assert fsing.local_equal(unit_away, Ideal.parse(R, "x"))
    assert not fsing.local_contains(Ideal.parse(R, "x"), Ideal.parse(R, "y"))
    assert fsing.local_part(Ideal.parse(R, "x*y + x")) == Ideal.parse(R, "x")


def test_route_disagreement_raises(node2, monkeypatch):
    monkeypatch.setattr(fsing, "cartier_levels", lambda pres, B, e_max=None: [False, False])
    with pytest.raises(InvariantError):
        fsing.is_compatible(node2, I(node2, "x"))
    assert node2.log.disagreements


def test_route_log_counts(node2):
    fsing.compatible_ideals(node2)
    assert node2.log.checks > 0
    assert node2.log.agreements == node2.log.checks
    assert not node2.log.level_splits


def test_emax_one_agrees_on_corpus():
    for name in ["node_p2", "stanley_reisner_p2", "whitney_umbrella_p5"]:
        a = fsing.compatible_ideals(load_corpus(name, e_max=1))
        b = fsing.compatible_ideals(load_corpus(name, e_max=2))
        assert texts(a.members) == texts(b.members)


def homogeneous_ideal(R, rng):
    gens = []
    for _ in range(rng.randint(1, 2)):
        d = rng.randint(1, 2)
        terms = {}
        for a in range(d + 1):
            if rng.random() < 0.6:
                terms[(a, d - a)] = rng.randrange(1, R.p)
        if terms:
            gens.append(R.from_dict(terms))
    return Ideal(R, gens or [R.gens()[0]])


@given(st.integers(0, 100_000), st.sampled_from(["node_p2", "node_p3"]))
def test_compatible_iff_lattice_member(seed, name):
    pres = load_corpus(name)
    lattice = fsing.compatible_ideals(pres)
    B = pres.lift(homogeneous_ideal(pres.ring, random.Random(seed)))
    assert fsing.is_compatible(pres, B) == lattice.has_member(B)
    assert fsing.is_compatible_cartier(pres, B) == lattice.has_member(B)


@given(st.integers(0, 100_000))
def test_star_closure_is_compatible_and_contains_seed(seed):
    pres = load_corpus("node_p3")
    B = homogeneous_ideal(pres.ring, random.Random(seed))
    J = fsing.star_closure(pres, B)
    assert contains(J, B)
    assert J.is_unit() or fsing.is_compatible(pres, J)

"""Seeded random polynomials and ideals for identity suites and benchmarks."""

from __future__ import annotations

import random

from fcompat.groebner import Ideal
from fcompat.poly import Polynomial, Ring


def random_polynomial(ring: Ring, rng: random.Random, max_deg: int = 3, max_terms: int = 3,
                      constant: bool = False) -> Polynomial:
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        total = rng.randint(0 if constant else 1, max_deg)
        exps = [0] * ring.nvars
        for _ in range(total):
            exps[rng.randrange(ring.nvars)] += 1
        terms[tuple(exps)] = rng.randrange(1, ring.p)
    return ring.from_dict(terms)


def random_ideal(ring: Ring, rng: random.Random, max_gens: int = 3, max_deg: int = 3,
                 max_terms: int = 3) -> Ideal:
    """A nonzero ideal inside the origin's maximal ideal."""
    while True:
        gens = [random_polynomial(ring, rng, max_deg, max_terms) for _ in range(rng.randint(1, max_gens))]
        gens = [g for g in gens if g.terms]
        if gens:
            return Ideal(ring, gens)

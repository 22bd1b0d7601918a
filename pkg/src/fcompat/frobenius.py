"""Frobenius bracket powers, p^e-th roots and Cartier multiplier ideals."""

from __future__ import annotations

from fcompat.groebner import Ideal, colon, contains, intersect
from fcompat.poly import Polynomial


def bracket_power(I: Ideal, e: int) -> Ideal:
    """I^[p^e], generated by the p^e-th powers of any generating set.

    Raising a reduced Gröbner basis to the p^e-th power gives the reduced
    Gröbner basis of the bracket power: Frobenius is additive, fixes F_p,
    sends every S-pair and standard representation to the corresponding one
    for the powered basis, and keeps the basis interreduced. The cached basis
    is therefore set directly.
    """
    if e < 1:
        raise ValueError("e must be >= 1")
    basis = [g.frobenius(e) for g in I.gb]
    return Ideal(I.ring, basis, gb=basis)


def bracket_power_of_generators(I: Ideal, e: int) -> Ideal:
    """Same ideal as :func:`bracket_power`, from the given generators with
    no shortcut; used to cross-check generating-set independence."""
    return Ideal(I.ring, [g.frobenius(e) for g in I.generators])


def root_components(f: Polynomial, e: int) -> dict[tuple[int, ...], Polynomial]:
    """Write f = Σ_α f_α^(p^e) x^α with 0 <= α_i < p^e; returns {α: f_α}."""
    ring = f.ring
    q = ring.p**e
    parts: dict[tuple[int, ...], dict] = {}
    for exps, c in f.items():
        alpha = tuple(a % q for a in exps)
        gamma = tuple(a // q for a in exps)
        parts.setdefault(alpha, {})[gamma] = c
    return {alpha: ring.from_dict(t) for alpha, t in sorted(parts.items())}


def pe_th_root(J: Ideal, e: int) -> Ideal:
    """The smallest ideal I with J ⊆ I^[p^e].

    S is free over S^(p^e) on the monomials x^α, 0 <= α_i < p^e, so the root
    is generated by the coordinates of the generators of J in that basis.
    """
    if e < 1:
        raise ValueError("e must be >= 1")
    gens = []
    for g in J.generators:
        gens.extend(root_components(g, e).values())
    return Ideal(J.ring, gens)


def cartier_multiplier(A: Ideal, e: int) -> Ideal:
    """C_e = (A^[p^e] : A); the unit ideal when A = 0."""
    if A.is_zero():
        return Ideal.unit(A.ring)
    return colon(bracket_power(A, e), A)


class CartierData:
    """Per-level cache of C_e = (A^[p^e] : A) for a fixed ideal A."""

    def __init__(self, A: Ideal, e_max: int = 2):
        if e_max < 1:
            raise ValueError("e_max must be >= 1")
        self.A = A
        self.e_max = e_max
        self.levels: dict[int, Ideal] = {}

    def level(self, e: int) -> Ideal:
        C = self.levels.get(e)
        if C is None:
            C = cartier_multiplier(self.A, e)
            self.levels[e] = C
        return C

    def all_levels(self, e_max: int | None = None) -> list[Ideal]:
        return [self.level(e) for e in range(1, (e_max or self.e_max) + 1)]


def bracket_colon(I: Ideal, e: int) -> Ideal:
    """(I^[p^e] : I), taking (0 : 0) = S."""
    return cartier_multiplier(I, e)


def intersection_identity(I: Ideal, J: Ideal, e: int) -> bool:
    """(I ∩ J)^[q] = I^[q] ∩ J^[q]."""
    return bracket_power(intersect(I, J), e) == intersect(bracket_power(I, e), bracket_power(J, e))


def colon_identity(I: Ideal, J: Ideal, e: int) -> bool:
    """(I : J)^[q] = (I^[q] : J^[q]) for J ≠ 0."""
    return bracket_power(colon(I, J), e) == colon(bracket_power(I, e), bracket_power(J, e))


def colon_multiplier_containment(A: Ideal, c: Ideal, e: int) -> bool:
    """(A^[q] : A) ⊆ ((A : c)^[q] : (A : c)) for c ≠ 0."""
    return contains(bracket_colon(colon(A, c), e), bracket_colon(A, e))


def prime_multiplier_containment(A: Ideal, P: Ideal, e: int) -> bool:
    """(A^[q] : A) ⊆ (P^[q] : P); expected for minimal primes P of a radical A."""
    return contains(bracket_colon(P, e), bracket_colon(A, e))

"""Buchberger's algorithm and the ideal calculus built on it.

Reduced Gröbner bases are canonical for a fixed term order, so ideal
equality, hashing and serialization all go through them.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from itertools import combinations

from fcompat import kernels
from fcompat.errors import PreconditionError, ResourceExhausted, RingMismatchError
from fcompat.poly import Polynomial, Ring, TermOrder, format_polynomial, inverse_mod


@dataclass(frozen=True)
class Limits:
    """Resource caps for a single Gröbner basis computation."""

    max_pairs: int = 200_000
    max_reductions: int = 5_000_000


DEFAULT_LIMITS = Limits()


class GroebnerBasis:
    """A reduced Gröbner basis: monic, interreduced, sorted by leading monomial."""

    def __init__(self, ring: Ring, basis: list[Polynomial]):
        self.ring = ring
        self.basis = basis
        self._leads = [g.lead_monomial for g in basis]
        self._tails = [[(m, c) for m, c in g.terms.items() if m != lead] for g, lead in zip(basis, self._leads)]

    @property
    def order(self) -> TermOrder:
        return self.ring.order

    def __len__(self):
        return len(self.basis)

    def __iter__(self):
        return iter(self.basis)

    def __eq__(self, other):
        return isinstance(other, GroebnerBasis) and self.ring == other.ring and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def key(self):
        return tuple(tuple(sorted(g.terms.items())) for g in self.basis)

    def reduce(self, f: Polynomial) -> Polynomial:
        if f.ring != self.ring:
            raise RingMismatchError(f"{f.ring!r} vs {self.ring!r}")
        if not f.terms or not self.basis:
            return f
        rem, _ = kernels.reduce_full(f.terms, self._leads, self._tails, self.ring.codec.guard, self.ring.p)
        return Polynomial(self.ring, rem)

    def strings(self) -> list[str]:
        """Generators as text, largest leading monomial first."""
        return [format_polynomial(g) for g in reversed(self.basis)]


def _spoly(ring, f, g, lf, lg):
    codec = ring.codec
    lcm = codec.lcm(lf, lg)
    a = kernels.poly_scale(f.terms, 1, lcm - lf, ring.p)
    return kernels.poly_sub_scaled(a, g.terms, 1, lcm - lg, ring.p)


def buchberger(ring: Ring, polys, limits: Limits = DEFAULT_LIMITS) -> list[Polynomial]:
    """Reduced Gröbner basis of the ideal generated by ``polys``.

    Pair elimination uses the product criterion and the Gebauer–Möller
    chain criteria; pairs are selected by sugar degree, then lcm.
    """
    codec = ring.codec
    p = ring.p
    guard = codec.guard
    polys = [f.monic() for f in polys if f.terms]
    if not polys:
        return []
    if any(f.is_constant() for f in polys):
        return [ring.one()]
    if all(f.is_monomial() for f in polys):
        return _minimal_monomials(ring, [f.lead_monomial for f in polys])

    G: list[Polynomial] = []
    leads: list[int] = []
    tails: list[list] = []
    sugar: list[int] = []
    degs: list[int] = []
    pairs: list[tuple] = []
    reductions = 0

    def add(h: Polynomial, s: int):
        nonlocal pairs
        lh = h.lead_monomial
        k = len(G)
        # B_k: drop old pairs (i, j) whose lcm is a multiple of lh unless equal
        # to lcm(i, h) or lcm(j, h)
        if pairs:
            kept = []
            for item in pairs:
                _, lij, i, j = item
                if codec.divides(lh, lij):
                    if codec.lcm(leads[i], lh) != lij and codec.lcm(leads[j], lh) != lij:
                        continue
                kept.append(item)
            if len(kept) != len(pairs):
                heapq.heapify(kept)
                pairs = kept
        new = []
        for i in range(k):
            if leads[i] is None:
                continue
            new.append((codec.lcm(leads[i], lh), i))
        # M: drop (i, h) if some (j, h) has lcm properly dividing
        survivors = []
        for lij, i in new:
            if any(ljh != lij and codec.divides(ljh, lij) for ljh, _ in new):
                continue
            survivors.append((lij, i))
        # F and product criterion by lcm group
        groups: dict[int, list[int]] = {}
        for lij, i in survivors:
            groups.setdefault(lij, []).append(i)
        dh = codec.degree(lh)
        for lij, idx in groups.items():
            if any(codec.coprime(leads[i], lh) for i in idx):
                continue
            i = min(idx)
            dl = codec.degree(lij)
            s_pair = max(sugar[i] + dl - degs[i], s + dl - dh)
            heapq.heappush(pairs, (s_pair, lij, i, k))
        if len(pairs) > limits.max_pairs:
            raise ResourceExhausted("Gröbner pair queue exceeded its cap", "max_pairs", len(pairs))
        G.append(h)
        leads.append(lh)
        tails.append([(m, c) for m, c in h.terms.items() if m != lh])
        sugar.append(s)
        degs.append(dh)

    def reduce(terms):
        nonlocal reductions
        active = [i for i in range(len(G)) if leads[i] is not None]
        rem, steps = kernels.reduce_full(terms, [leads[i] for i in active], [tails[i] for i in active], guard, p)
        reductions += steps
        if reductions > limits.max_reductions:
            raise ResourceExhausted("Gröbner reduction count exceeded its cap", "max_reductions", reductions)
        return rem

    for f in sorted(polys, key=lambda f: f.lead_monomial):
        r = reduce(f.terms)
        if r:
            h = Polynomial(ring, r).monic()
            add(h, h.degree())

    while pairs:
        s, lij, i, j = heapq.heappop(pairs)
        sp = _spoly(ring, G[i], G[j], leads[i], leads[j])
        r = reduce(sp)
        if r:
            h = Polynomial(ring, r).monic()
            if h.is_constant():
                return [ring.one()]
            add(h, max(s, h.degree()))

    return _interreduce(ring, G)


def _minimal_monomials(ring: Ring, monos) -> list[Polynomial]:
    codec = ring.codec
    monos = sorted(set(monos))
    keep = []
    for m in monos:
        if not any(codec.divides(k, m) for k in keep):
            keep.append(m)
    return [Polynomial(ring, {m: 1}) for m in keep]


def _interreduce(ring: Ring, G: list[Polynomial]) -> list[Polynomial]:
    codec = ring.codec
    G = sorted(G, key=lambda g: g.lead_monomial)
    minimal: list[Polynomial] = []
    for g in G:
        lg = g.lead_monomial
        if not any(codec.divides(h.lead_monomial, lg) for h in minimal):
            minimal.append(g)
    out = []
    for idx, g in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1:]
        leads = [h.lead_monomial for h in others]
        tails = [[(m, c) for m, c in h.terms.items() if m != h.lead_monomial] for h in others]
        rem, _ = kernels.reduce_full(g.terms, leads, tails, codec.guard, ring.p)
        out.append(Polynomial(ring, rem).monic())
    out.sort(key=lambda g: g.lead_monomial)
    return out


class Ideal:
    """An ideal given by generators, with a lazily cached reduced Gröbner basis.

    Values are immutable; equality and hashing use the reduced basis.
    """

    def __init__(self, ring: Ring, generators=(), *, gb: list[Polynomial] | None = None):
        self.ring = ring
        gens = []
        for g in generators:
            if isinstance(g, str):
                g = ring.parse(g)
            if g.ring != ring:
                raise RingMismatchError(f"{g.ring!r} vs {ring!r}")
            if g.terms:
                gens.append(g)
        self.generators = gens
        self._gb = GroebnerBasis(ring, gb) if gb is not None else None

    @classmethod
    def parse(cls, ring: Ring, text: str) -> Ideal:
        """Comma-separated generator list; empty text or "0" is the zero ideal."""
        parts = [t for t in (s.strip() for s in text.split(",")) if t]
        return cls(ring, [ring.parse(t) for t in parts])

    @classmethod
    def unit(cls, ring: Ring) -> Ideal:
        return cls(ring, [ring.one()], gb=[ring.one()])

    @classmethod
    def zero(cls, ring: Ring) -> Ideal:
        return cls(ring, [], gb=[])

    @classmethod
    def maximal(cls, ring: Ring) -> Ideal:
        return cls(ring, ring.gens(), gb=sorted(ring.gens(), key=lambda g: g.lead_monomial))

    def groebner(self, limits: Limits = DEFAULT_LIMITS) -> GroebnerBasis:
        if self._gb is None:
            self._gb = GroebnerBasis(self.ring, buchberger(self.ring, self.generators, limits))
        return self._gb

    @property
    def gb(self) -> GroebnerBasis:
        return self.groebner()

    def canonical(self) -> Ideal:
        """The same ideal generated by its reduced Gröbner basis."""
        gb = self.gb
        return Ideal(self.ring, gb.basis, gb=gb.basis)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.ring == other.ring and self.gb.key() == other.gb.key()

    def __hash__(self):
        return hash((self.ring, self.gb.key()))

    def __repr__(self):
        return f"Ideal({self.strings()})"

    def __str__(self):
        return "(" + ", ".join(self.strings()) + ")"

    def strings(self) -> list[str]:
        return self.gb.strings()

    def sort_key(self):
        return (len(self.gb), self.strings())

    def is_zero(self) -> bool:
        return not self.generators

    def is_unit(self) -> bool:
        if any(g.is_constant() for g in self.generators):
            return True
        return len(self.gb) == 1 and self.gb.basis[0].is_constant()

    def is_monomial(self) -> bool:
        if all(g.is_monomial() for g in self.generators):
            return True
        return all(g.is_monomial() for g in self.gb)

    def is_homogeneous(self) -> bool:
        if all(g.is_homogeneous() for g in self.generators):
            return True
        if self.ring.order.kind != "grevlex":
            return False
        return all(g.is_homogeneous() for g in self.gb)

    def in_origin_maximal(self) -> bool:
        """True when the ideal lies in (x_1, ..., x_d)."""
        return all(g.constant_term() == 0 for g in self.generators)

    def max_degree(self) -> int:
        return max((g.degree() for g in self.generators), default=0)

    def __contains__(self, f: Polynomial) -> bool:
        return normal_form(f, self).is_zero()

    def __add__(self, other: Ideal) -> Ideal:
        return combine(self, other, "sum")

    def __mul__(self, other: Ideal) -> Ideal:
        return combine(self, other, "product")

    def __and__(self, other: Ideal) -> Ideal:
        return intersect(self, other)

    def __le__(self, other: Ideal) -> bool:
        return contains(other, self)

    def __ge__(self, other: Ideal) -> bool:
        return contains(self, other)

    def __lt__(self, other: Ideal) -> bool:
        return contains(other, self) and not contains(self, other)

    def __gt__(self, other: Ideal) -> bool:
        return other < self

    def to_ring(self, ring: Ring, mapping=None) -> Ideal:
        return Ideal(ring, [g.to_ring(ring, mapping) for g in self.generators])


def reduced_groebner_basis(I: Ideal, limits: Limits = DEFAULT_LIMITS) -> GroebnerBasis:
    return I.groebner(limits)


def _same_ring(I: Ideal, J: Ideal):
    if I.ring != J.ring:
        raise RingMismatchError(f"{I.ring!r} vs {J.ring!r}")


def normal_form(f: Polynomial, I: Ideal) -> Polynomial:
    if f.ring != I.ring:
        raise RingMismatchError(f"{f.ring!r} vs {I.ring!r}")
    return I.gb.reduce(f)


def contains(I: Ideal, J: Ideal) -> bool:
    """True iff J ⊆ I."""
    _same_ring(I, J)
    if not J.generators:
        return True
    if I.is_unit():
        return True
    gb = I.gb
    return all(gb.reduce(g).is_zero() for g in J.generators)


def combine(I: Ideal, J: Ideal, op: str) -> Ideal:
    _same_ring(I, J)
    if op == "sum":
        return Ideal(I.ring, I.generators + J.generators)
    if op == "product":
        return Ideal(I.ring, [f * g for f in I.generators for g in J.generators])
    raise ValueError(f"unknown operation {op!r}")


def exact_divide(g: Polynomial, f: Polynomial) -> Polynomial:
    """g / f, which must be exact."""
    ring = g.ring
    codec = ring.codec
    p = ring.p
    lf = f.lead_monomial
    inv = inverse_mod(f.lead_coeff, p)
    rem = dict(g.terms)
    quot: dict[int, int] = {}
    while rem:
        m = max(rem)
        if not codec.divides(lf, m):
            raise ValueError("division is not exact")
        c = rem[m] * inv % p
        shift = m - lf
        quot[shift] = c
        rem = kernels.poly_sub_scaled(rem, f.terms, c, shift, p)
    return Polynomial(ring, quot)


def eliminate(I: Ideal, names) -> Ideal:
    """I ∩ F_p[remaining variables], as an ideal of the smaller ring."""
    ring = I.ring
    names = list(names)
    keep = [v for v in ring.variables if v not in names]
    big = Ring(ring.p, names + keep, TermOrder("block", len(names)))
    small = Ring(ring.p, keep, ring.order)
    gb = Ideal(big, [g.to_ring(big) for g in I.generators]).gb
    elim = set(range(len(names)))
    out = [g for g in gb if not (g.support() & elim)]
    mapping = [None] * len(names) + list(range(len(keep)))
    return Ideal(small, [g.to_ring(small, mapping) for g in out])


def _monomial_intersect(I: Ideal, J: Ideal) -> Ideal:
    codec = I.ring.codec
    monos = [codec.lcm(f.lead_monomial, g.lead_monomial) for f in I.gb for g in J.gb]
    basis = _minimal_monomials(I.ring, monos)
    return Ideal(I.ring, basis, gb=basis)


def intersect(I: Ideal, J: Ideal) -> Ideal:
    """I ∩ J by eliminating t from t·I + (1 - t)·J."""
    _same_ring(I, J)
    ring = I.ring
    if I.is_zero() or J.is_zero():
        return Ideal.zero(ring)
    if contains(J, I):
        return I
    if contains(I, J):
        return J
    if I.is_monomial() and J.is_monomial():
        return _monomial_intersect(I, J)
    t = "_t"
    while t in ring.variables:
        t += "_"
    big = ring.extend([t], TermOrder("block", 1))
    tt = big.gen(0)
    gens = [tt * g.to_ring(big) for g in I.gb] + [(big.one() - tt) * g.to_ring(big) for g in J.gb]
    gb = Ideal(big, gens).gb
    out = [g.to_ring(ring, _drop_first(big)) for g in gb if 0 not in g.support()]
    basis = sorted(out, key=lambda g: g.lead_monomial)
    return Ideal(ring, basis, gb=basis)


def _drop_first(big: Ring):
    return [None] + list(range(big.nvars - 1))


def _colon_poly(I: Ideal, f: Polynomial) -> Ideal:
    ring = I.ring
    if normal_form(f, I).is_zero():
        return Ideal.unit(ring)
    if f.is_monomial() and I.is_monomial():
        codec = ring.codec
        lf = f.lead_monomial
        monos = [g.lead_monomial - codec.gcd(g.lead_monomial, lf) for g in I.gb]
        basis = _minimal_monomials(ring, monos)
        return Ideal(ring, basis, gb=basis)
    inter = intersect(I, Ideal(ring, [f]))
    return Ideal(ring, [exact_divide(g, f) for g in inter.gb])


def colon(I: Ideal, J: Ideal) -> Ideal:
    """(I : J) = ⋂ over generators f of J of (1/f)(I ∩ (f))."""
    _same_ring(I, J)
    if J.is_zero():
        raise PreconditionError("colon by the zero ideal is not supported")
    if contains(I, J):
        return Ideal.unit(I.ring)
    result = None
    for f in J.gb:
        part = _colon_poly(I, f)
        result = part if result is None else intersect(result, part)
    return result.canonical()


def dimension(I: Ideal) -> int:
    """Krull dimension of S/I from the leading-monomial ideal; -1 for the unit ideal."""
    if I.is_unit():
        return -1
    ring = I.ring
    d = ring.nvars
    decode = ring.codec.decode
    supports = [frozenset(i for i, a in enumerate(decode(g.lead_monomial)) if a) for g in I.gb]
    for size in range(d, -1, -1):
        for subset in combinations(range(d), size):
            s = set(subset)
            if all(not sup <= s for sup in supports):
                return size
    return 0


def height(I: Ideal) -> int:
    return I.ring.nvars - dimension(I)

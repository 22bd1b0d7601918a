"""Minimal primes of polynomial ideals over F_p at desk scale.

There is no general primary decomposition here. Exact answers come from
certified cases: monomial ideals, ideals that become smaller after
eliminating a variable that occurs linearly, principal ideals that factor
through univariate factorization or carry an isolated-singularity
irreducibility certificate, and zero-dimensional ideals split by minimal
polynomials in the finite quotient algebra. Everything else goes through a
bounded zero-divisor search and is tagged with an honest capability.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement, product

import numpy as np

from fcompat import factor as uf
from fcompat.errors import PreconditionError
from fcompat.groebner import Ideal, colon, contains, dimension, intersect
from fcompat.linalg import nullspace
from fcompat.poly import Polynomial, Ring

EXACT = "exact"
HEURISTIC = "heuristic-verified"
FAILED = "failed"

_RANK = {EXACT: 0, HEURISTIC: 1, FAILED: 2}


def _worst(*caps):
    return max(caps, key=_RANK.__getitem__)


@dataclass(frozen=True)
class DecompLimits:
    max_depth: int = 40
    candidate_degree: int = 3
    max_linear_forms: int = 400
    zero_dim_tries: int = 64
    max_zero_dim_size: int = 4096
    seed: int = 0


@dataclass
class MinimalPrimesResult:
    primes: list[Ideal]
    capability: str
    notes: list[str] = field(default_factory=list)


def minimal_primes(I: Ideal, limits: DecompLimits = DecompLimits()) -> MinimalPrimesResult:
    """Minimal primes of I with a capability tag (exact, heuristic-verified, failed)."""
    if I.is_unit():
        raise PreconditionError("the unit ideal has no minimal primes")
    ctx = _Context(limits)
    primes, cap = ctx.run(I.canonical(), 0)
    primes = _antichain(primes)
    for P in primes:
        if not contains(P, I):
            raise AssertionError(f"decomposition produced {P} not containing the input")
    return MinimalPrimesResult(primes, cap, ctx.notes)


def is_prime_desk(I: Ideal, limits: DecompLimits = DecompLimits()) -> str:
    """"yes", "no" or "unknown"."""
    if I.is_unit():
        raise PreconditionError("the unit ideal is not prime")
    res = minimal_primes(I, limits)
    if res.capability == EXACT:
        return "yes" if len(res.primes) == 1 and res.primes[0] == I else "no"
    if len(res.primes) > 1 or (res.primes and res.primes[0] != I):
        return "no"
    return "unknown"


def monomial_minimal_primes(I: Ideal) -> list[Ideal]:
    """Minimal vertex covers of the supports of the minimal generators."""
    ring = I.ring
    dec = ring.codec.decode
    edges = []
    for g in I.gb:
        edges.append(frozenset(i for i, a in enumerate(dec(g.lead_monomial)) if a))
    if any(not e for e in edges):
        raise PreconditionError("the unit ideal has no minimal primes")
    covers: list[frozenset] = []
    for size in range(ring.nvars + 1):
        for subset in combinations(range(ring.nvars), size):
            s = frozenset(subset)
            if any(c <= s for c in covers):
                continue
            if all(e & s for e in edges):
                covers.append(s)
    return sorted((_var_ideal(ring, c) for c in covers), key=lambda P: P.sort_key())


def _var_ideal(ring: Ring, idx) -> Ideal:
    gens = sorted((ring.gen(i) for i in idx), key=lambda g: g.lead_monomial)
    return Ideal(ring, gens, gb=gens)


def _antichain(primes: list[Ideal]) -> list[Ideal]:
    uniq = []
    for P in primes:
        if not any(P == Q for Q in uniq):
            uniq.append(P)
    out = []
    for P in uniq:
        if any(Q is not P and contains(P, Q) and not contains(Q, P) for Q in uniq):
            continue
        out.append(P)
    return sorted(out, key=lambda P: P.sort_key())


def _linear_variable(g: Polynomial):
    """(index, coefficient) of a variable occurring in g only as a degree-1
    term with no other variable in that term, or None."""
    dec = g.ring.codec.decode
    items = [(dec(m), c) for m, c in g.terms.items()]
    best = None
    for i in range(g.ring.nvars):
        lin = None
        ok = True
        for exps, c in items:
            if exps[i] == 0:
                continue
            if exps[i] == 1 and sum(exps) == 1:
                lin = c
            else:
                ok = False
                break
        if ok and lin is not None:
            # prefer the largest variable index so small rings stay in front
            best = (i, lin)
    return best


def _monomial_content(g: Polynomial) -> tuple[int, ...]:
    dec = g.ring.codec.decode
    exps = [dec(m) for m in g.terms]
    return tuple(min(col) for col in zip(*exps))


class _Context:
    def __init__(self, limits: DecompLimits):
        self.limits = limits
        self.rng = random.Random(limits.seed)
        self.notes: list[str] = []

    def run(self, I: Ideal, depth: int):
        if I.is_unit():
            return [], EXACT
        if depth > self.limits.max_depth:
            self.notes.append(f"recursion depth cap hit at {I}")
            return [I], FAILED
        if I.is_zero():
            return [I], EXACT
        if I.is_monomial():
            return monomial_minimal_primes(I), EXACT

        reduced = self._eliminate_linear(I, depth)
        if reduced is not None:
            return reduced

        split = self._split_generators(I, depth)
        if split is not None:
            return split

        if len(I.gb) == 1:
            f = I.gb.basis[0]
            factors, certified = _factor_certified(f)
            if (factors is not None and certified and len(factors) == 1) or _irreducible_certificate(f):
                return [I], EXACT

        if dimension(I) == 0:
            return self._zero_dimensional(I, depth)

        split = self._zero_divisor_search(I, depth)
        if split is not None:
            return split
        self.notes.append(f"no certificate for {I}; no zero divisor among candidates")
        return [I], HEURISTIC

    def _union(self, parts, depth):
        primes, cap = [], EXACT
        for J in parts:
            ps, c = self.run(J.canonical(), depth + 1)
            primes.extend(ps)
            cap = _worst(cap, c)
        return _antichain(primes), cap

    def _eliminate_linear(self, I: Ideal, depth: int):
        ring = I.ring
        for g in I.gb:
            hit = _linear_variable(g)
            if hit is None:
                continue
            i, c = hit
            x = ring.gen(i)
            # x = -(g - c x) / c
            value = (x * c - g) * pow(c, -1, ring.p)
            others = []
            for h in I.gb:
                if h is g:
                    continue
                s = h.substitute(i, value)
                if s.terms:
                    others.append(s)
            sub = Ideal(ring, others)
            ps, cap = self.run(sub.canonical(), depth + 1)
            lifted = [Ideal(ring, P.generators + [g]).canonical() for P in ps]
            return _antichain(lifted), cap
        return None

    def _split_generators(self, I: Ideal, depth: int):
        ring = I.ring
        for g in I.gb:
            factors = _split_polynomial(g)
            if factors is None:
                continue
            return self._union([Ideal(ring, I.generators + [h]) for h in factors], depth)
        return None

    def _zero_divisor_search(self, I: Ideal, depth: int):
        ring = I.ring
        for f in self._candidates(ring):
            if f in I:
                continue
            K = colon(I, Ideal(ring, [f]))
            if K == I:
                continue
            return self._union([Ideal(ring, I.generators + [f]), K], depth)
        return None

    def _candidates(self, ring: Ring):
        d = ring.nvars
        for k in range(1, self.limits.candidate_degree + 1):
            for combo in combinations_with_replacement(range(d), k):
                exps = [0] * d
                for i in combo:
                    exps[i] += 1
                yield ring.monomial(exps)
        p = ring.p
        count = 0
        for coeffs in product(range(p), repeat=d):
            nz = [c for c in coeffs if c]
            if len(nz) < 2 or nz[0] != 1:
                continue
            count += 1
            if count > self.limits.max_linear_forms:
                return
            yield ring.from_dict({tuple(int(i == j) for j in range(d)): c for i, c in enumerate(coeffs) if c})

    def _zero_dimensional(self, I: Ideal, depth: int):
        ring = I.ring
        alg = _QuotientAlgebra(I)
        if alg.size > self.limits.max_zero_dim_size:
            self.notes.append(f"quotient algebra of {I} too large ({alg.size})")
            return [I], FAILED
        # radicalize with squarefree parts of the variables' minimal polynomials
        extra = []
        minpolys = []
        for i in range(ring.nvars):
            m = alg.minimal_polynomial(ring.gen(i))
            minpolys.append(m)
            s = uf.squarefree_part_dense(m, ring.p)
            if len(s) < len(m):
                extra.append(uf.from_dense(s, ring, i))
        if extra:
            return self._union([Ideal(ring, I.generators + extra)], depth - 1)
        for i, m in enumerate(minpolys):
            _, facs = uf.factor_dense(m, ring.p)
            if len(facs) > 1:
                return self._union([Ideal(ring, I.generators + [uf.from_dense(h, ring, i)]) for h, _ in facs], depth)
            if len(m) - 1 == alg.size:
                return [I], EXACT
        for _ in range(self.limits.zero_dim_tries):
            a = alg.random_element(self.rng)
            m = alg.minimal_polynomial(a)
            _, facs = uf.factor_dense(m, ring.p)
            if len(facs) > 1:
                return self._union([Ideal(ring, I.generators + [_eval_univariate(h, a)]) for h, _ in facs], depth)
            if len(m) - 1 == alg.size:
                return [I], EXACT
        self.notes.append(f"no primitive element found for {I}")
        return [I], FAILED


def _eval_univariate(coeffs, a: Polynomial) -> Polynomial:
    result = a.ring.zero()
    for c in reversed(coeffs):
        result = result * a + c
    return result


def _split_polynomial(g: Polynomial):
    """Nontrivial factors of g found by monomial content or univariate /
    bivariate-homogeneous factorization; None when no split is found."""
    factors, _ = _factor_certified(g)
    return factors if factors is not None and len(factors) > 1 else None


def _factor_certified(g: Polynomial):
    """(factors, certified). ``factors`` lists the distinct irreducible factors
    when a factorization method applies, else None; ``certified`` is True when
    that list is known to be complete."""
    ring = g.ring
    content = _monomial_content(g)
    if any(content) and len(g.terms) > 1:
        return [ring.gen(i) for i, a in enumerate(content) if a] + [_strip(g, content)], False
    sup = sorted(g.support())
    if len(sup) == 1:
        _, facs = uf.factor_dense(uf.to_dense(g, sup[0]), ring.p)
        return [uf.from_dense(h, ring, sup[0]) for h, _ in facs], True
    if len(sup) == 2 and g.is_homogeneous():
        x, y = sup
        dense = [0] * (g.degree() + 1)
        for exps, c in g.items():
            dense[exps[x]] = c
        _, facs = uf.factor_dense(uf.trim(dense), ring.p)
        total = sum(len(h) - 1 for h, _ in facs)
        out = []
        for h, _ in facs:
            k = len(h) - 1
            out.append(ring.from_dict({_bi(x, y, j, k - j, ring.nvars): c for j, c in enumerate(h) if c}))
        if total < g.degree():
            out.append(ring.gen(y))
        return out, True
    return _quadratic_factor(g)


def _quadratic_factor(g: Polynomial):
    """f = a t^2 + b t + c with a a nonzero constant: over the UFD
    F_p[others] it splits iff the discriminant is a square, and then into
    the two factors linear in t. In characteristic 2 only b = 0 is handled."""
    ring = g.ring
    p = ring.p
    for t in sorted(g.support()):
        parts = {}
        for exps, c in g.items():
            k = exps[t]
            rest = list(exps)
            rest[t] = 0
            parts.setdefault(k, {})[tuple(rest)] = c
        if max(parts) != 2 or len(parts[2]) != 1 or any(next(iter(parts[2]))):
            continue
        a = next(iter(parts[2].values()))
        b = ring.from_dict(parts.get(1, {}))
        c = ring.from_dict(parts.get(0, {}))
        x = ring.gen(t)
        inv_a = pow(a, -1, p)
        if p == 2:
            if b.terms:
                continue
            root = poly_sqrt(c * inv_a)
            return ([g], True) if root is None else ([x + root], True)
        disc = b * b - c * (4 * a % p)
        root = poly_sqrt(disc)
        if root is None:
            return [g], True
        half = pow(2 * a, -1, p)
        r1 = (root - b) * half
        r2 = (ring.zero() - root - b) * half
        out = [x - r1] if r1 == r2 else [x - r1, x - r2]
        return out, True
    return None, False


def sqrt_mod(a: int, p: int):
    """A square root of a mod the prime p, or None."""
    a %= p
    if a == 0 or p == 2:
        return a
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    # Tonelli-Shanks
    q, s = p - 1, 0
    while q % 2 == 0:
        q, s = q // 2, s + 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2, i = t2 * t2 % p, i + 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return r


def poly_sqrt(g: Polynomial):
    """h with h^2 = g, or None when g is not a square."""
    ring = g.ring
    if not g.terms:
        return g
    lead = g.lead_exponents
    if any(e % 2 for e in lead):
        return None
    c = sqrt_mod(g.lead_coeff, ring.p)
    if c is None:
        return None
    h = ring.monomial([e // 2 for e in lead], c)
    if ring.p == 2:
        return h if h * h == g else _sqrt_char2(g)
    two_lc = 2 * c % ring.p
    hlead = h.lead_exponents
    r = g - h * h
    while r.terms:
        rl = r.lead_exponents
        diff = [u - v for u, v in zip(rl, hlead)]
        if min(diff) < 0:
            return None
        t = ring.monomial(diff, r.lead_coeff * pow(two_lc, -1, ring.p))
        if t.lead_monomial >= h.lead_monomial:
            return None
        h = h + t
        r = g - h * h
    return h


def _sqrt_char2(g: Polynomial):
    # in characteristic 2, g is a square iff every exponent is even
    terms = {}
    for exps, c in g.items():
        if any(e % 2 for e in exps):
            return None
        terms[tuple(e // 2 for e in exps)] = c
    return g.ring.from_dict(terms)


def _bi(x, y, a, b, n):
    exps = [0] * n
    exps[x] = a
    exps[y] = b
    return tuple(exps)


def _strip(g: Polynomial, content) -> Polynomial:
    shift = g.ring.codec.encode(content)
    return Polynomial(g.ring, {m - shift: c for m, c in g.terms.items()})


def _irreducible_certificate(f: Polynomial) -> bool:
    """Homogenize f; in >= 3 variables an isolated singular locus of the
    homogenization rules out a factorization (two factors would meet along a
    positive-dimensional set of singular points)."""
    ring = f.ring
    sup = sorted(f.support())
    if f.degree() <= 1:
        return True
    homogeneous = f.is_homogeneous()
    if homogeneous and len(sup) < 3:
        return False
    names = [ring.variables[i] for i in sup]
    h = "_h"
    while h in ring.variables:
        h += "_"
    big = Ring(ring.p, names + [h], "grevlex")
    mapping = [None] * ring.nvars
    for j, i in enumerate(sup):
        mapping[i] = j
    deg = f.degree()
    terms = {}
    dec = ring.codec.decode
    for m, c in f.terms.items():
        exps = dec(m)
        tgt = [exps[i] for i in sup] + [deg - sum(exps)]
        terms[tuple(tgt)] = c
    F = big.from_dict(terms)
    if homogeneous:
        big = Ring(ring.p, names, "grevlex")
        F = f.to_ring(big, mapping)
    elif big.nvars < 3:
        return False
    J = Ideal(big, [F] + [F.derivative(i) for i in range(big.nvars)])
    return J.is_unit() or dimension(J) <= 0


class _QuotientAlgebra:
    """S/I for zero-dimensional I, on the standard-monomial basis."""

    def __init__(self, I: Ideal):
        self.I = I
        self.ring = I.ring
        self.basis = _standard_monomials(I)
        self.index = {m: k for k, m in enumerate(self.basis)}
        self.size = len(self.basis)

    def vector(self, f: Polynomial):
        r = self.I.gb.reduce(f)
        v = np.zeros(self.size, dtype=np.int64)
        for m, c in r.terms.items():
            v[self.index[m]] = c
        return v

    def minimal_polynomial(self, a: Polynomial):
        p = self.ring.p
        powers = [self.vector(self.ring.one())]
        cur = self.ring.one()
        while True:
            cur = self.I.gb.reduce(cur * a)
            powers.append(self.vector(cur))
            M = np.array(powers, dtype=np.int64).T
            ker = nullspace(M, p)
            if ker:
                v = ker[0]
                coeffs = uf.trim([int(x) for x in v])
                # kernel vector is unique up to scaling at the first dependency
                return uf.monic(coeffs, p)

    def random_element(self, rng: random.Random) -> Polynomial:
        p = self.ring.p
        return Polynomial(self.ring, {m: c for m in self.basis if (c := rng.randrange(p))})


def _standard_monomials(I: Ideal) -> list[int]:
    ring = I.ring
    codec = ring.codec
    leads = [g.lead_monomial for g in I.gb]
    out = []
    frontier = [0]
    seen = {0}
    while frontier:
        m = frontier.pop()
        if any(codec.divides(l, m) for l in leads):
            continue
        out.append(m)
        for i in range(ring.nvars):
            n = m + codec.var(i)
            if n not in seen:
                seen.add(n)
                frontier.append(n)
    return sorted(out)


def verify_decomposition(I: Ideal, result: MinimalPrimesResult, radical: bool = False) -> list[str]:
    """Problems found with a decomposition (empty when consistent)."""
    problems = []
    for P in result.primes:
        if not contains(P, I):
            problems.append(f"{P} does not contain the input")
    for P, Q in combinations(result.primes, 2):
        if contains(P, Q) or contains(Q, P):
            problems.append(f"{P} and {Q} are comparable")
    if radical and result.primes:
        inter = result.primes[0]
        for P in result.primes[1:]:
            inter = intersect(inter, P)
        if inter != I:
            problems.append("intersection of the primes differs from the input")
    return problems

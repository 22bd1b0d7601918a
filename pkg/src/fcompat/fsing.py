"""Uniformly F-compatible ideals of R = S/A, S = F_p[x_1..x_d] localized at
the origin.

An ideal of R is represented by the S-ideal B containing A with B/A = b.
Compatibility of B is decided by the colon criterion

    (A^[q] : A) ⊆ (B^[q] : B)      for q = p^e, e = 1..e_max,

and independently by the Cartier criterion

    root_e((A^[q] : A) · B) ⊆ B,

which agree by adjunction between bracket powers and p^e-th roots. Every
"for all e" statement is checked up to ``e_max`` and reports carry that bound.
Containments are local at the origin; for homogeneous ideals that is the
same as containment of polynomial ideals.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations

from fcompat.decomp import EXACT, DecompLimits, is_prime_desk, minimal_primes
from fcompat.errors import CapabilityError, InvariantError, NotFPureError, PreconditionError, ResourceExhausted
from fcompat.frobenius import CartierData, bracket_power, pe_th_root
from fcompat.groebner import Ideal, colon, contains, height, intersect
from fcompat.poly import Polynomial, Ring


@dataclass(frozen=True)
class FsingConfig:
    e_max: int = 2
    max_iter: int = 64
    seed: int = 0
    cross_check_routes: bool = True
    decomp: DecompLimits = DecompLimits()


@dataclass
class RouteLog:
    """Counts of compatibility tests; both routes are run when cross-checking."""

    checks: int = 0
    agreements: int = 0
    disagreements: list = field(default_factory=list)
    level_splits: list = field(default_factory=list)


class Presentation:
    """R = S/A with S = F_p[x_1..x_d] localized at M = (x_1..x_d)."""

    def __init__(self, ring: Ring, A, config: FsingConfig = FsingConfig(), log: RouteLog | None = None):
        if isinstance(A, str):
            A = Ideal.parse(ring, A)
        elif not isinstance(A, Ideal):
            A = Ideal(ring, list(A))
        if A.ring != ring:
            raise PreconditionError("ideal and ring differ")
        for g in A.generators:
            if g.constant_term():
                raise PreconditionError(f"generator {g} has a nonzero constant term, so A is not inside M")
        self.ring = ring
        self.A = A.canonical()
        self.M = Ideal.maximal(ring)
        self.config = config
        self.cartier = CartierData(self.A, config.e_max)
        self.log = log if log is not None else RouteLog()
        self._fpure: bool | None = None
        self._cache: dict = {}

    @property
    def p(self) -> int:
        return self.ring.p

    @property
    def fpure(self) -> bool | None:
        return self._fpure

    def e_max(self, e_max: int | None) -> int:
        return self.config.e_max if e_max is None else e_max

    def quotient(self, c: Ideal) -> Presentation:
        """S/c, sharing configuration and route log."""
        if not contains(c, self.A):
            raise PreconditionError("quotient ideal must contain A")
        return Presentation(self.ring, c, self.config, self.log)

    def lift(self, B) -> Ideal:
        """The S-ideal B + A."""
        if isinstance(B, str):
            B = Ideal.parse(self.ring, B)
        return Ideal(self.ring, B.generators + self.A.generators).canonical()

    def __repr__(self):
        return f"Presentation({self.ring!r}, A={self.A})"


# local algebra at the origin


def local_contains(I: Ideal, J: Ideal) -> bool:
    """J S_M ⊆ I S_M, i.e. (I : J) ⊄ M."""
    if contains(I, J):
        return True
    if I.is_homogeneous() and J.is_homogeneous():
        return False
    return not colon(I, J).in_origin_maximal()


def local_equal(I: Ideal, J: Ideal) -> bool:
    return local_contains(I, J) and local_contains(J, I)


def local_minimal_primes(I: Ideal, limits: DecompLimits = DecompLimits(), stage=None):
    """Minimal primes of I lying inside M; raises CapabilityError unless exact."""
    res = minimal_primes(I, limits)
    if res.capability != EXACT:
        raise CapabilityError(f"minimal primes of {I} are {res.capability}", ideal=I, stage=stage)
    return [P for P in res.primes if P.in_origin_maximal()]


def local_part(I: Ideal, limits: DecompLimits = DecompLimits()) -> Ideal:
    """I S_M ∩ S for the radical ideals produced here: strip minimal
    components through points other than the origin by saturation."""
    if I.is_unit() or I.is_homogeneous():
        return I
    res = minimal_primes(I, limits)
    inside = [P for P in res.primes if P.in_origin_maximal()]
    outside = [P for P in res.primes if not P.in_origin_maximal()]
    if not outside:
        return I
    if not inside:
        return Ideal.unit(I.ring)
    s = _avoiding_element(I.ring, [Ideal.unit(I.ring)] * 0 + [_product(outside)], inside)
    J = I
    while True:
        K = colon(J, Ideal(I.ring, [s]))
        if K == J:
            return J
        J = K


def _product(ideals: list[Ideal]) -> Ideal:
    out = ideals[0]
    for J in ideals[1:]:
        out = out * J
    return out.canonical()


def _avoiding_element(ring: Ring, within: list[Ideal], avoid: list[Ideal]) -> Polynomial:
    """An element of ⋂ within (given as one ideal) outside every prime in ``avoid``."""
    K = within[0]
    if len(avoid) == 1:
        for g in K.gb:
            if g not in avoid[0]:
                return g
        raise InvariantError("ideal is contained in the prime it must avoid", witness=avoid[0])
    total = ring.zero()
    for i, P in enumerate(avoid):
        k = next((g for g in K.gb if g not in P), None)
        if k is None:
            raise InvariantError("ideal is contained in a prime it must avoid", witness=P)
        t = ring.one()
        for j, Q in enumerate(avoid):
            if j == i:
                continue
            y = next((g for g in Q.gb if g not in P), None)
            if y is None:
                raise InvariantError("primes to avoid are not an antichain", witness=Q)
            t = t * y
        total = total + k * t
    return total


# F-purity


def fedder_is_f_pure(pres: Presentation) -> bool:
    """Fedder's criterion: (A^[p] : A) ⊄ M^[p]."""
    if pres._fpure is None:
        C1 = pres.cartier.level(1)
        pres._fpure = not contains(bracket_power(pres.M, 1), C1)
    return pres._fpure


def require_fpure(pres: Presentation):
    if not fedder_is_f_pure(pres):
        raise NotFPureError(f"S/{pres.A} is not F-pure (Fedder's criterion fails)")


# the two compatibility routes


def colon_levels(pres: Presentation, B: Ideal, e_max: int | None = None) -> list[bool]:
    """Per level e: (A^[q] : A) ⊆ (B'^[q] : B') with B' = B + A."""
    require_fpure(pres)
    e_max = pres.e_max(e_max)
    Bf = pres.lift(B)
    out = []
    for e in range(1, e_max + 1):
        if Bf.is_unit() or Bf.is_zero():
            out.append(True)
            continue
        C = pres.cartier.level(e)
        target = colon(bracket_power(Bf, e), Bf)
        out.append(local_contains(target, C))
    return out


def cartier_levels(pres: Presentation, B: Ideal, e_max: int | None = None) -> list[bool]:
    """Per level e: root_e(C_e · B') ⊆ B'."""
    require_fpure(pres)
    e_max = pres.e_max(e_max)
    Bf = pres.lift(B)
    out = []
    for e in range(1, e_max + 1):
        if Bf.is_unit() or Bf.is_zero():
            out.append(True)
            continue
        C = pres.cartier.level(e)
        out.append(local_contains(Bf, pe_th_root(C * Bf, e)))
    return out


def is_compatible(pres: Presentation, B: Ideal, e_max: int | None = None) -> bool:
    """Colon-route test at every level up to e_max; cross-checked against the
    Cartier route when the presentation's config asks for it."""
    levels = colon_levels(pres, B, e_max)
    _record(pres, B, levels, e_max)
    return all(levels)


def is_compatible_cartier(pres: Presentation, B: Ideal, e_max: int | None = None) -> bool:
    return all(cartier_levels(pres, B, e_max))


def _record(pres: Presentation, B: Ideal, levels: list[bool], e_max):
    log = pres.log
    log.checks += 1
    if any(levels) and not all(levels):
        log.level_splits.append((str(pres.A), str(pres.lift(B)), levels))
    if not pres.config.cross_check_routes:
        return
    other = cartier_levels(pres, B, e_max)
    if other != levels:
        log.disagreements.append((str(pres.A), str(pres.lift(B)), levels, other))
        raise InvariantError(f"colon and Cartier routes disagree on {pres.lift(B)}: {levels} vs {other}",
                             witness=pres.lift(B))
    log.agreements += 1


# closures and test ideals


def star_closure(pres: Presentation, seed: Ideal, e_max: int | None = None) -> Ideal:
    """Smallest ideal containing seed + A that is stable under
    J ↦ J + Σ_{e ≤ e_max} root_e(C_e · J)."""
    require_fpure(pres)
    e_max = pres.e_max(e_max)
    J = pres.lift(seed)
    for _ in range(pres.config.max_iter):
        if J.is_unit():
            return J
        gens = list(J.gb.basis)
        for e in range(1, e_max + 1):
            gens.extend(pe_th_root(pres.cartier.level(e) * J, e).generators)
        new = Ideal(pres.ring, gens).canonical()
        if new == J:
            return J
        J = new
    raise ResourceExhausted("star closure did not stabilize", "max_iter", pres.config.max_iter)


def jacobian_ideal(P: Ideal, h: int) -> Ideal:
    """h×h minors of the Jacobian matrix of P's reduced Gröbner basis."""
    ring = P.ring
    gens = P.gb.basis
    if h == 0:
        return Ideal.unit(ring)
    rows = [[g.derivative(j) for j in range(ring.nvars)] for g in gens]
    minors = []
    for rs in combinations(range(len(rows)), h):
        for cs in combinations(range(ring.nvars), h):
            det = _determinant([[rows[r][c] for c in cs] for r in rs], ring)
            if det.terms:
                minors.append(det)
    return Ideal(ring, minors)


def _determinant(mat, ring: Ring) -> Polynomial:
    n = len(mat)
    if n == 1:
        return mat[0][0]
    total = ring.zero()
    for j in range(n):
        if not mat[0][j].terms:
            continue
        sub = [row[:j] + row[j + 1:] for row in mat[1:]]
        term = mat[0][j] * _determinant(sub, ring)
        total = total + term if j % 2 == 0 else total - term
    return total


def test_element_candidates(pres: Presentation, mins: list[Ideal]) -> list[Polynomial]:
    """Elements c of R° with R_c regular: c lies in the ideal cutting out the
    singular locus (Jacobian of each minimal prime, pairwise intersections)
    and avoids every minimal prime."""
    ring = pres.ring
    if not mins:
        return [ring.one()]
    factors = [Ideal(ring, P.generators + jacobian_ideal(P, height(P)).generators).canonical() for P in mins]
    factors += [(P + Q).canonical() for P, Q in combinations(mins, 2)]
    K = _product(factors)
    if K.is_unit():
        return [ring.one()]
    candidates = [_avoiding_element(ring, [K], mins)]
    for g in K.gb:
        if all(g not in P for P in mins) and g not in candidates:
            candidates.append(g)
    return candidates


def _random_candidates(pres: Presentation, mins: list[Ideal], count: int = 4, degree: int = 2):
    rng = random.Random(pres.config.seed)
    ring = pres.ring
    out = []
    monos = []
    for total in range(1, degree + 1):
        for combo in _compositions(total, ring.nvars):
            monos.append(combo)
    tries = 0
    while len(out) < count and tries < 64 * count:
        tries += 1
        f = ring.from_dict({m: rng.randrange(ring.p) for m in monos})
        if f.terms and all(f not in P for P in mins):
            out.append(f)
    return out


def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for k in range(total, -1, -1):
        for rest in _compositions(total - k, parts - 1):
            yield (k,) + rest


def big_test_ideal(pres: Presentation) -> Ideal:
    """S-ideal T with T/A the big test ideal: the smallest compatible ideal
    meeting R°, obtained as the star closure of test-element candidates."""
    require_fpure(pres)
    key = ("big_test", pres.config.e_max)
    if key in pres._cache:
        return pres._cache[key]
    ring = pres.ring
    if pres.A.is_zero():
        T = Ideal.unit(ring)
        pres._cache[key] = T
        return T
    mins = local_minimal_primes(pres.A, pres.config.decomp)
    candidates = test_element_candidates(pres, mins)
    if not candidates:
        candidates = _random_candidates(pres, mins)
    if not candidates:
        raise CapabilityError("no test-element candidate found", ideal=pres.A)
    T = None
    for c in candidates:
        J = star_closure(pres, Ideal(ring, [c]))
        T = J if T is None else intersect(T, J).canonical()
    T = local_part(T, pres.config.decomp).canonical()
    if not T.is_unit():
        if not is_compatible(pres, T):
            raise InvariantError(f"big test ideal {T} failed the compatibility check", witness=T)
        for P in mins:
            if contains(P, T):
                raise InvariantError(f"big test ideal {T} lies in the minimal prime {P}", witness=P)
    pres._cache[key] = T
    return T


@dataclass
class ChainReport:
    stages: list[Ideal]
    fpure: list[bool]
    e_max: int

    @property
    def length(self) -> int:
        return len(self.stages) - 1


def big_test_chain(pres: Presentation) -> ChainReport:
    """A = T_0 ⊂ T_1 ⊂ ... ⊂ T_w with T_{i+1}/T_i the big test ideal of S/T_i,
    stopping when that test ideal is the whole quotient."""
    require_fpure(pres)
    key = ("chain", pres.config.e_max)
    if key in pres._cache:
        return pres._cache[key]
    stages = [pres.A]
    flags = [True]
    cur = pres
    while True:
        T = big_test_ideal(cur)
        if T.is_unit():
            break
        if not (contains(T, cur.A) and not contains(cur.A, T)):
            raise InvariantError(f"big test chain stalls at {cur.A}", witness=T)
        stages.append(T)
        cur = pres.quotient(T)
        ok = fedder_is_f_pure(cur)
        flags.append(ok)
        if not ok:
            raise InvariantError(f"quotient by chain stage {T} is not F-pure", witness=T)
    report = ChainReport(stages, flags, pres.config.e_max)
    pres._cache[key] = report
    return report


# enumeration


@dataclass
class CompatibleLattice:
    primes: list[Ideal]
    members: list[Ideal]
    provenance: dict[str, str]
    chain: ChainReport
    e_max: int

    def proper_members(self) -> list[Ideal]:
        return [I for I in self.members if not I.is_unit()]

    def has_member(self, I: Ideal) -> bool:
        return any(I == J for J in self.members)

    def has_prime(self, I: Ideal) -> bool:
        return any(I == P for P in self.primes)


def compatible_primes(pres: Presentation) -> list[Ideal]:
    return _enumerate_primes(pres)[0]


def _enumerate_primes(pres: Presentation):
    require_fpure(pres)
    key = ("primes", pres.config.e_max)
    if key in pres._cache:
        return pres._cache[key]
    chain = big_test_chain(pres)
    primes: list[Ideal] = []
    provenance: dict[str, str] = {}
    for i, T in enumerate(chain.stages):
        for P in local_minimal_primes(T, pres.config.decomp, stage=i):
            if not any(P == Q for Q in primes):
                primes.append(P)
                provenance[str(P)] = f"minimal prime of chain stage {i}"
    primes.sort(key=lambda P: P.sort_key())
    for P in primes:
        if not is_compatible(pres, P):
            raise InvariantError(f"enumerated prime {P} is not compatible", witness=P)
    pres._cache[key] = (primes, provenance, chain)
    return pres._cache[key]


def _antichains(primes: list[Ideal]):
    n = len(primes)
    below = [[i != j and contains(primes[j], primes[i]) for j in range(n)] for i in range(n)]

    def rec(start, chosen):
        if chosen:
            yield list(chosen)
        for k in range(start, n):
            if any(below[k][c] or below[c][k] for c in chosen):
                continue
            chosen.append(k)
            yield from rec(k + 1, chosen)
            chosen.pop()

    yield from rec(0, [])


def compatible_ideals(pres: Presentation, verify: bool = True) -> CompatibleLattice:
    """All compatible ideals: intersections of antichains of compatible primes,
    plus the unit ideal."""
    key = ("lattice", pres.config.e_max, verify)
    if key in pres._cache:
        return pres._cache[key]
    primes, provenance, chain = _enumerate_primes(pres)
    members: list[Ideal] = []
    for ac in _antichains(primes):
        I = primes[ac[0]]
        for k in ac[1:]:
            I = intersect(I, primes[k])
        I = I.canonical()
        if not any(I == J for J in members):
            members.append(I)
    members.sort(key=lambda I: I.sort_key())
    members.append(Ideal.unit(pres.ring))
    lattice = CompatibleLattice(primes, members, provenance, chain, pres.config.e_max)
    if verify:
        problems = lattice_problems(pres, lattice)
        if problems:
            raise InvariantError("; ".join(problems))
    pres._cache[key] = lattice
    return lattice


def maximal_proper_members(lattice: CompatibleLattice) -> list[Ideal]:
    proper = lattice.proper_members()
    return [I for I in proper if not any(J != I and contains(J, I) for J in proper)]


def lattice_problems(pres: Presentation, lattice: CompatibleLattice) -> list[str]:
    """Violations of the closure invariants (empty when all hold)."""
    problems = []
    proper = lattice.proper_members()
    for I in proper:
        if not is_compatible(pres, I):
            problems.append(f"member {I} is not compatible")
    for I, J in combinations(lattice.members, 2):
        s = local_part((I + J).canonical(), pres.config.decomp)
        if not lattice.has_member(s):
            problems.append(f"sum {I} + {J} is not a member")
        t = intersect(I, J).canonical()
        if not lattice.has_member(t):
            problems.append(f"intersection of {I} and {J} is not a member")
    for I in proper:
        ps = local_minimal_primes(I, pres.config.decomp)
        for P in ps:
            if not lattice.has_prime(P):
                problems.append(f"minimal prime {P} of member {I} is not a lattice prime")
        inter = ps[0]
        for P in ps[1:]:
            inter = intersect(inter, P)
        if inter != I:
            problems.append(f"member {I} is not the intersection of its minimal primes")
    tops = maximal_proper_members(lattice)
    if len(tops) != 1:
        problems.append(f"{len(tops)} maximal proper members")
    elif is_prime_desk(tops[0], pres.config.decomp) != "yes":
        problems.append(f"maximal proper member {tops[0]} is not certified prime")
    return problems


def fedder_level_sets(pres: Presentation, e_max: int | None = None) -> list[Ideal]:
    """(M^[q] : C_e) for e = 1..e_max."""
    e_max = pres.e_max(e_max)
    return [colon(bracket_power(pres.M, e), pres.cartier.level(e)) for e in range(1, e_max + 1)]


def aberbach_enescu_bound(pres: Presentation, e_max: int | None = None) -> Ideal:
    """⋂_{e ≤ e_max} (M^[q] : C_e); contains the splitting prime and decreases
    to it as e_max grows."""
    sets = fedder_level_sets(pres, e_max)
    out = sets[0]
    for J in sets[1:]:
        out = intersect(out, J)
    return out.canonical()


def splitting_prime(pres: Presentation, lattice: CompatibleLattice | None = None) -> Ideal:
    """The unique largest proper compatible ideal, verified prime, compatible
    and inside every Fedder level set (M^[q] : C_e)."""
    require_fpure(pres)
    if lattice is None:
        lattice = compatible_ideals(pres)
    tops = maximal_proper_members(lattice)
    if len(tops) != 1:
        raise InvariantError(f"lattice has {len(tops)} maximal proper members", witness=tops)
    Q = tops[0]
    if is_prime_desk(Q, pres.config.decomp) != "yes":
        raise InvariantError(f"splitting prime candidate {Q} is not certified prime", witness=Q)
    if not is_compatible(pres, Q):
        raise InvariantError(f"splitting prime candidate {Q} is not compatible", witness=Q)
    for e, L in enumerate(fedder_level_sets(pres, lattice.e_max), start=1):
        if not local_contains(L, Q):
            raise InvariantError(f"splitting prime {Q} escapes (M^[p^{e}] : C_{e}) = {L}", witness=L)
    return Q


def s_test_ideal(pres: Presentation, lattice: CompatibleLattice, avoided: list[Ideal]) -> Ideal:
    """Smallest member meeting W = R minus the union of ``avoided``: the
    intersection of the minimal lattice primes not inside any avoided prime."""
    for P in avoided:
        if not contains(P, pres.A):
            raise PreconditionError(f"avoided ideal {P} does not contain A")
        if P.is_unit() or is_prime_desk(P, pres.config.decomp) != "yes":
            raise PreconditionError(f"avoided ideal {P} is not prime")
    meets = [q for q in lattice.primes if all(not contains(P, q) for P in avoided)]
    minimal = [q for q in meets if not any(r != q and contains(q, r) for r in meets)]
    if not minimal:
        return Ideal.unit(pres.ring)
    out = minimal[0]
    for q in minimal[1:]:
        out = intersect(out, q)
    return out.canonical()


@dataclass
class LocalizationResult:
    at: Ideal
    primes: list[Ideal]
    big_test_ideal: Ideal
    consistent: bool


def localize_compatible(pres: Presentation, lattice: CompatibleLattice, at: Ideal) -> LocalizationResult:
    """Compatible primes of R_p (as lattice primes inside p) and the localized
    big test ideal, checked against the extension of the global one."""
    at = pres.lift(at)
    if not lattice.has_prime(at):
        raise PreconditionError(f"{at} is not a compatible prime")
    inside = [q for q in lattice.primes if contains(at, q)]
    # minimal primes of R_p are the minimal primes of R inside p
    minimal = [q for q in inside if not any(r != q and contains(q, r) for r in inside)]
    positive = [q for q in inside if not any(q == r for r in minimal)]
    if positive:
        tau = positive[0]
        for q in positive[1:]:
            tau = intersect(tau, q)
        tau = tau.canonical()
    else:
        tau = Ideal.unit(pres.ring)
    global_tau = big_test_ideal(pres)
    consistent = all(contains(q, tau) == contains(q, global_tau) for q in inside)
    return LocalizationResult(at, inside, tau, consistent)


@dataclass
class QuotientReport:
    c: Ideal
    fpure: bool
    primes: list[Ideal]
    primes_in_lattice: bool
    big_test_ideal: Ideal
    big_test_in_lattice: bool
    witnesses: list[str]

    @property
    def ok(self) -> bool:
        return self.fpure and self.primes_in_lattice and self.big_test_in_lattice


def verify_quotient(pres: Presentation, lattice: CompatibleLattice, c: Ideal) -> QuotientReport:
    """Check that S/c is F-pure and that its compatible primes and big test
    ideal lift into the lattice of R."""
    c = pres.lift(c)
    if c.is_unit() or not lattice.has_member(c):
        raise PreconditionError(f"{c} is not a proper lattice member")
    sub = pres.quotient(c)
    witnesses = []
    fp = fedder_is_f_pure(sub)
    if not fp:
        witnesses.append(f"S/{c} fails Fedder's criterion")
        return QuotientReport(c, False, [], False, Ideal.unit(pres.ring), False, witnesses)
    primes = compatible_primes(sub)
    ok_primes = True
    for P in primes:
        if not (lattice.has_prime(P) and contains(P, c)):
            ok_primes = False
            witnesses.append(f"quotient prime {P} is not a lattice prime containing c")
    T = big_test_ideal(sub)
    ok_T = lattice.has_member(T)
    if not ok_T:
        witnesses.append(f"lifted big test ideal {T} is not a lattice member")
    return QuotientReport(c, fp, primes, ok_primes, T, ok_T, witnesses)

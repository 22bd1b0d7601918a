"""Finite slices of the injective hull E_S = E_S(S/M) as inverse polynomials.

An inverse monomial x^{-γ} has every γ_i >= 1; the socle generator is
u = x^{-(1,...,1)}. S acts by x^α · x^{-γ} = x^{-(γ-α)} when every
component stays >= 1, and by 0 otherwise. The map

    δ_n(b ⊗ x^{-γ}) = b · x^{-qγ},        q = p^n,

is the isomorphism S x^n ⊗ E_S ≅ E_S in the coordinates a_i = x_i. All
checks here are slice-level: only γ with every γ_i <= D is represented,
and the action only lowers γ, so slices are closed under S.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from fcompat.errors import PreconditionError, TruncationOverflow
from fcompat.frobenius import bracket_power
from fcompat.groebner import Ideal, colon
from fcompat.linalg import nullspace, rref
from fcompat.poly import Polynomial, Ring


@dataclass(frozen=True, order=True)
class InverseMonomial:
    gamma: tuple[int, ...]

    def __post_init__(self):
        if any(g < 1 for g in self.gamma):
            raise ValueError(f"inverse monomial exponents must be >= 1, got {self.gamma}")

    @classmethod
    def socle(cls, d: int) -> InverseMonomial:
        return cls((1,) * d)

    def __str__(self):
        return "x^-(" + ",".join(map(str, self.gamma)) + ")"


class ETruncation:
    """The F_p-span of x^{-γ} with 1 <= γ_i <= D.

    Elements are dicts {γ: coefficient} with coefficients in [1, p).
    """

    def __init__(self, ring: Ring, D: int):
        if D < 1:
            raise PreconditionError("truncation bound must be >= 1")
        self.ring = ring
        self.D = D
        self.basis = list(product(range(1, D + 1), repeat=ring.nvars))
        self.index = {g: i for i, g in enumerate(self.basis)}

    @property
    def dim(self) -> int:
        return len(self.basis)

    def socle(self) -> dict:
        return {(1,) * self.ring.nvars: 1}

    def check(self, elem: dict) -> dict:
        need = max((max(g) for g in elem), default=0)
        if need > self.D:
            raise TruncationOverflow(f"element needs D >= {need}, truncation has D = {self.D}", required=need)
        return elem

    def to_vector(self, elem: dict) -> np.ndarray:
        self.check(elem)
        v = np.zeros(self.dim, dtype=np.int64)
        for g, c in elem.items():
            v[self.index[g]] = c
        return v

    def from_vector(self, v) -> dict:
        return {self.basis[i]: int(c) for i, c in enumerate(v) if c}

    def act_matrix(self, f: Polynomial) -> np.ndarray:
        """Matrix of v ↦ f·v on the slice (columns are basis images)."""
        M = np.zeros((self.dim, self.dim), dtype=np.int64)
        for j, g in enumerate(self.basis):
            for h, c in act(f, {g: 1}).items():
                M[self.index[h], j] = c
        return M


def act(f: Polynomial, elem: dict) -> dict:
    """f · elem in E_S."""
    p = f.ring.p
    out: dict = {}
    terms = list(f.items())
    for gamma, a in elem.items():
        for alpha, c in terms:
            h = tuple(g - x for g, x in zip(gamma, alpha))
            if min(h) < 1:
                continue
            v = (out.get(h, 0) + a * c) % p
            if v:
                out[h] = v
            else:
                out.pop(h, None)
    return out


def add(u: dict, v: dict, p: int) -> dict:
    out = dict(u)
    for g, c in v.items():
        s = (out.get(g, 0) + c) % p
        if s:
            out[g] = s
        else:
            out.pop(g, None)
    return out


def scale(u: dict, c: int, p: int) -> dict:
    c %= p
    return {g: a * c % p for g, a in u.items()} if c else {}


def delta_n_apply(b: Polynomial, n: int, elem: dict, trunc: ETruncation | None = None) -> dict:
    """δ_n(b ⊗ elem) = b · elem^{[q]} where x^{-γ} ↦ x^{-qγ}.

    Raises TruncationOverflow when the image needs a deeper slice than
    ``trunc`` provides; the error carries the minimal sufficient D.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    q = b.ring.p**n
    lifted = {tuple(q * g for g in gamma): c for gamma, c in elem.items()}
    if trunc is not None:
        need = max((max(g) for g in lifted), default=0)
        if need > trunc.D:
            raise TruncationOverflow(f"δ_{n} image needs D >= {need}, truncation has D = {trunc.D}", required=need)
    return act(b, lifted)


def annihilator_in_E(B: Ideal, D: int) -> list[dict]:
    """F_p-basis of the depth-D slice of (0 :_{E_S} B)."""
    trunc = ETruncation(B.ring, D)
    return _annihilator(B, trunc)


def _annihilator(B: Ideal, trunc: ETruncation) -> list[dict]:
    p = B.ring.p
    if B.is_zero():
        return [{g: 1} for g in trunc.basis]
    if B.is_unit():
        return []
    if B.is_monomial():
        gens = [g.lead_exponents for g in B.gb]
        return [{g: 1} for g in trunc.basis
                if all(any(c >= a for a, c in zip(g, alpha)) for alpha in gens)]
    mats = [trunc.act_matrix(g) for g in B.gb]
    kernel = nullspace(np.vstack(mats), p, trunc.dim)
    return [trunc.from_vector(v) for v in _reduced(kernel, p, trunc.dim)]


def _reduced(vectors, p, n):
    if not len(vectors):
        return []
    R, _ = rref(np.array(vectors, dtype=np.int64), p)
    return list(R)


def s_span(elems: list[dict], trunc: ETruncation) -> np.ndarray:
    """Row-reduced basis of the S-submodule generated by ``elems``."""
    p = trunc.ring.p
    gens = [trunc.ring.gen(i) for i in range(trunc.ring.nvars)]
    rows = [trunc.to_vector(e) for e in elems if e]
    if not rows:
        return np.zeros((0, trunc.dim), dtype=np.int64)
    R, _ = rref(np.array(rows), p)
    while True:
        new = list(R)
        for r in R:
            elem = trunc.from_vector(r)
            for x in gens:
                img = act(x, elem)
                if img:
                    new.append(trunc.to_vector(img))
        R2, _ = rref(np.array(new), p)
        if R2.shape[0] == R.shape[0]:
            return R2
        R = R2


def restrict(span: np.ndarray, big: ETruncation, small: ETruncation) -> np.ndarray:
    """Basis of span ∩ (slice of depth small.D), in small's coordinates."""
    p = big.ring.p
    if span.shape[0] == 0:
        return np.zeros((0, small.dim), dtype=np.int64)
    outside = [i for i, g in enumerate(big.basis) if max(g) > small.D]
    inside = [i for i, g in enumerate(big.basis) if max(g) <= small.D]
    R, pivots = rref(span[:, outside + inside], p)
    k = len(outside)
    keep = [r for r, c in zip(R, pivots) if c >= k]
    out = np.zeros((len(keep), small.dim), dtype=np.int64)
    for row, r in enumerate(keep):
        for j, i in enumerate(inside):
            if r[k + j]:
                out[row, small.index[big.basis[i]]] = r[k + j]
    return out


def _span_of(elems: list[dict], trunc: ETruncation) -> np.ndarray:
    rows = [trunc.to_vector(e) for e in elems if e]
    if not rows:
        return np.zeros((0, trunc.dim), dtype=np.int64)
    return rref(np.array(rows), trunc.ring.p)[0]


@dataclass
class Pa1Report:
    B: Ideal
    n: int
    D: int
    source_depth: int
    image_dim: int
    annihilator_dim: int
    part_i: bool
    colon_image_dim: int
    colon_annihilator_dim: int
    part_ii: bool

    @property
    def ok(self) -> bool:
        return self.part_i and self.part_ii


def _images(ring: Ring, B: Ideal, n: int, depth: int, small: ETruncation):
    q = ring.p**n
    big = ETruncation(ring, q * depth)
    source = _annihilator(B, ETruncation(ring, depth))
    one = ring.one()
    img_i = [delta_n_apply(one, n, g, big) for g in source]
    rs = [] if B.is_zero() or B.is_unit() else list(B.gb)
    img_ii = [act(r, x) for r in rs for x in img_i]
    return (restrict(s_span(img_i, big), big, small),
            restrict(s_span(img_ii, big), big, small))


def verify_lemma_pa1(ring: Ring, B: Ideal, n: int, D: int) -> Pa1Report:
    """Compare, on the depth-D slice, the S-span of δ_n images with the
    annihilators they should fill out:

    (i)  S·δ_n(x^n ⊗ (0:B))   against (0 : B^[q]);
    (ii) S·δ_n(B x^n ⊗ (0:B)) against (0 : (B^[q] : B)).

    The images only grow with the depth of the (0:B) source slice, so the
    depth starts at ceil(D/q) and is raised until both sides match or the
    cap D + deg B is hit. Each image is also checked to lie inside its
    annihilator at every depth tried.
    """
    q = ring.p**n
    small = ETruncation(ring, D)
    if B.is_unit():
        rhs_i = rhs_ii = np.zeros((0, small.dim), dtype=np.int64)
    elif B.is_zero():
        rhs_i = _span_of(_annihilator(B, small), small)
        rhs_ii = np.zeros((0, small.dim), dtype=np.int64)
    else:
        Bq = bracket_power(B, n)
        rhs_i = _span_of(_annihilator(Bq, small), small)
        rhs_ii = _span_of(_annihilator(colon(Bq, B), small), small)
    top = 0 if B.is_unit() or B.is_zero() else max(g.degree() for g in B.gb)
    depth = -(-D // q)
    while True:
        lhs_i, lhs_ii = _images(ring, B, n, depth, small)
        inside = _contained(lhs_i, rhs_i, ring.p) and _contained(lhs_ii, rhs_ii, ring.p)
        done = _same(lhs_i, rhs_i) and _same(lhs_ii, rhs_ii)
        if done or not inside or depth >= D + top:
            break
        depth += 1
    return Pa1Report(B, n, D, depth, lhs_i.shape[0], rhs_i.shape[0], _same(lhs_i, rhs_i),
                     lhs_ii.shape[0], rhs_ii.shape[0], _same(lhs_ii, rhs_ii))


def _contained(a: np.ndarray, b: np.ndarray, p: int) -> bool:
    if a.shape[0] == 0:
        return True
    return rref(np.vstack([b, a]), p)[0].shape[0] == b.shape[0]


def _same(a: np.ndarray, b: np.ndarray) -> bool:
    return a.shape == b.shape and np.array_equal(a, b)


def default_bound(B: Ideal, n_max: int) -> int:
    """p^{n_max} · (1 + max generator degree of B)."""
    return B.ring.p**n_max * (1 + max((g.degree() for g in B.gb), default=0))


@dataclass
class SocleWitness:
    n: int
    r: Polynomial
    g: dict
    c: Polynomial
    image: dict


def fully_special_witness(pres, B: Ideal, n_max: int, D: int | None = None) -> SocleWitness | None:
    """Search for r ∈ gens(B'), g in the (0:B') slice and c ∈ gens(C_n),
    n <= n_max, with c·δ_n(r ⊗ g) ≠ 0. Here B' = B + A.

    The source slice has depth D // p^{n_max}, so every image fits.
    """
    from fcompat.fsing import require_fpure

    require_fpure(pres)
    Bf = pres.lift(B)
    if Bf.is_unit() or Bf.is_zero():
        return None
    if D is None:
        D = default_bound(Bf, n_max)
    depth = D // pres.p**n_max
    if depth < 1:
        raise TruncationOverflow(f"D = {D} is below p^{n_max}", required=pres.p**n_max)
    trunc = ETruncation(pres.ring, D)
    source = _annihilator(Bf, ETruncation(pres.ring, depth))
    for n in range(1, n_max + 1):
        C = pres.cartier.level(n)
        for r in Bf.gb:
            for g in source:
                image = delta_n_apply(r, n, g, trunc)
                if not image:
                    continue
                for c in C.gb:
                    if act(c, image):
                        return SocleWitness(n, r, g, c, image)
    return None


def verify_fully_special_socle(pres, B: Ideal, n_max: int, D: int | None = None) -> bool:
    """True iff every C_n kills every δ_n(r ⊗ g) on the slice."""
    return fully_special_witness(pres, B, n_max, D) is None


def format_element(elem: dict, p: int | None = None) -> str:
    if not elem:
        return "0"
    parts = []
    for g in sorted(elem, reverse=True):
        c = elem[g]
        mono = "x^-(" + ",".join(map(str, g)) + ")"
        parts.append(mono if c == 1 else f"{c}*{mono}")
    return " + ".join(parts)

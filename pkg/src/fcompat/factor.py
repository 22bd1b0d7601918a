"""Univariate factorization over F_p: squarefree decomposition and Berlekamp.

Internally a univariate polynomial is a dense coefficient list, lowest
degree first, with no trailing zeros.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from fcompat.errors import PreconditionError
from fcompat.linalg import nullspace
from fcompat.poly import Polynomial, inverse_mod


def trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def deg(a) -> int:
    return len(a) - 1


def add(a, b, p):
    n = max(len(a), len(b))
    return trim([((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p for i in range(n)])


def sub(a, b, p):
    n = max(len(a), len(b))
    return trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)])


def mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return trim(out)


def divmod_(a, b, p):
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    a = list(a)
    inv = inverse_mod(b[-1], p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        c = a[-1] * inv % p
        k = len(a) - len(b)
        q[k] = c
        for i, y in enumerate(b):
            a[i + k] = (a[i + k] - c * y) % p
        a = trim(a)
    return trim(q), a


def monic(a, p):
    if not a:
        return a
    inv = inverse_mod(a[-1], p)
    return [x * inv % p for x in a]


def gcd(a, b, p):
    a, b = trim(a), trim(b)
    while b:
        a, b = b, divmod_(a, b, p)[1]
    return monic(a, p)


def derivative(a, p):
    return trim([(i * a[i]) % p for i in range(1, len(a))])


def powmod(base, n, mod, p):
    result = [1]
    base = divmod_(base, mod, p)[1]
    while n:
        if n & 1:
            result = divmod_(mul(result, base, p), mod, p)[1]
        n >>= 1
        if n:
            base = divmod_(mul(base, base, p), mod, p)[1]
    return result


def pth_root(a, p):
    """g with g^p = a, for a whose exponents are all multiples of p."""
    return trim([a[i] for i in range(0, len(a), p)])


def squarefree_decomposition(a, p):
    """Pairs (g_i, i) with a = lc · Π g_i^i, each g_i monic squarefree."""
    a = monic(trim(a), p)
    if deg(a) < 1:
        return []
    out: dict[int, list] = {}
    _sqf(a, p, 1, out)
    return sorted(((g, k) for k, g in out.items() if deg(g) >= 1), key=lambda t: t[1])


def _sqf(a, p, mult, out):
    # Yun's algorithm adapted to characteristic p: the part with zero
    # derivative is a p-th power and recurses with multiplicity scaled by p
    i = 1
    da = derivative(a, p)
    c = gcd(a, da, p)
    w = divmod_(a, c, p)[0]
    while deg(w) >= 1:
        y = gcd(w, c, p)
        z = divmod_(w, y, p)[0]
        if deg(z) >= 1:
            k = i * mult
            out[k] = mul(out[k], z, p) if k in out else z
        i += 1
        w = y
        c = divmod_(c, y, p)[0]
    if deg(c) >= 1:
        _sqf(pth_root(c, p), p, mult * p, out)


def squarefree_part_dense(a, p):
    result = [1]
    for g, _ in squarefree_decomposition(a, p):
        result = mul(result, g, p)
    return result


def berlekamp(f, p):
    """Irreducible monic factors of a monic squarefree f, sorted by (degree, coefficients)."""
    f = trim(f)
    n = deg(f)
    if n < 1:
        raise PreconditionError("berlekamp needs degree >= 1")
    if f[-1] != 1:
        raise PreconditionError("berlekamp needs a monic polynomial")
    if deg(gcd(f, derivative(f, p), p)) > 0:
        raise PreconditionError("berlekamp needs a squarefree polynomial")
    if n == 1:
        return [f]
    # rows: x^(p i) mod f; kernel of (Q - I)^T spans the Berlekamp subalgebra
    Q = np.zeros((n, n), dtype=np.int64)
    xp = powmod([0, 1], p, f, p)
    row = [1]
    for i in range(n):
        for j, c in enumerate(row):
            Q[i, j] = c
        row = divmod_(mul(row, xp, p), f, p)[1]
    K = (Q - np.eye(n, dtype=np.int64)) % p
    basis = nullspace(K.T, p)
    r = len(basis)
    if r == 1:
        return [f]
    factors = [f]
    vecs = [trim([int(x) for x in v]) for v in basis]
    vecs = [v for v in vecs if deg(v) >= 1]
    for v in vecs:
        if len(factors) == r:
            break
        new = []
        for g in factors:
            if deg(g) <= 1:
                new.append(g)
                continue
            rest = g
            for s in range(p):
                if deg(rest) < 1:
                    break
                h = gcd(sub(v, [s], p), rest, p)
                if 1 <= deg(h) < deg(rest):
                    new.append(h)
                    rest = divmod_(rest, h, p)[0]
            if deg(rest) >= 1:
                new.append(rest)
        factors = new
    return sorted((monic(g, p) for g in factors), key=lambda g: (deg(g), g))


def is_irreducible_dense(f, p) -> bool:
    """Rabin-style probe: f of degree n irreducible iff x^(p^n) = x mod f and
    gcd(x^(p^(n/r)) - x, f) = 1 for every prime r | n."""
    f = monic(trim(f), p)
    n = deg(f)
    if n < 1:
        return False
    if n == 1:
        return True
    x = [0, 1]

    def frob_pow(k):
        r = x
        for _ in range(k):
            r = powmod(r, p, f, p)
        return r

    if frob_pow(n) != x:
        return False
    for r in _prime_divisors(n):
        h = sub(frob_pow(n // r), x, p)
        if deg(gcd(h, f, p)) != 0:
            return False
    return True


def _prime_divisors(n):
    out = []
    k = 2
    while k * k <= n:
        if n % k == 0:
            out.append(k)
            while n % k == 0:
                n //= k
        k += 1
    if n > 1:
        out.append(n)
    return out


def factor_dense(a, p):
    """(unit, [(irreducible monic factor, multiplicity), ...])."""
    a = trim(a)
    if not a:
        raise PreconditionError("cannot factor zero")
    unit = a[-1]
    out = []
    for g, k in squarefree_decomposition(a, p):
        for h in berlekamp(g, p):
            out.append((h, k))
    out.sort(key=lambda t: (deg(t[0]), t[0], t[1]))
    return unit, out


# Polynomial-level interface


def _univariate_index(f: Polynomial) -> int:
    sup = f.support()
    if len(sup) > 1:
        raise PreconditionError("polynomial is not univariate")
    return next(iter(sup)) if sup else 0


def to_dense(f: Polynomial, index: int | None = None):
    if index is None:
        index = _univariate_index(f)
    elif f.support() - {index}:
        raise PreconditionError("polynomial is not univariate")
    out = [0] * (f.degree() + 1 if f.terms else 0)
    for exps, c in f.items():
        out[exps[index]] = c
    return trim(out)


def from_dense(a, ring, index: int) -> Polynomial:
    terms = {}
    for k, c in enumerate(a):
        if c:
            exps = [0] * ring.nvars
            exps[index] = k
            terms[tuple(exps)] = c
    return ring.from_dict(terms)


@dataclass
class UnivariateFactorization:
    input: Polynomial
    unit: int
    factors: list[tuple[Polynomial, int]]

    def product(self) -> Polynomial:
        result = self.input.ring.constant(self.unit)
        for g, k in self.factors:
            result = result * g**k
        return result


def squarefree_part(f: Polynomial) -> Polynomial:
    if f.is_zero():
        raise PreconditionError("squarefree part of zero is undefined")
    i = _univariate_index(f)
    return from_dense(squarefree_part_dense(to_dense(f, i), f.ring.p), f.ring, i)


def berlekamp_factor(f: Polynomial) -> list[Polynomial]:
    if f.is_zero() or f.is_constant():
        raise PreconditionError("berlekamp needs degree >= 1")
    i = _univariate_index(f)
    return [from_dense(g, f.ring, i) for g in berlekamp(to_dense(f, i), f.ring.p)]


def factor(f: Polynomial) -> UnivariateFactorization:
    if f.is_zero():
        raise PreconditionError("cannot factor zero")
    i = _univariate_index(f)
    unit, facs = factor_dense(to_dense(f, i), f.ring.p)
    return UnivariateFactorization(f, unit, [(from_dense(g, f.ring, i), k) for g, k in facs])

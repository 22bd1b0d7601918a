"""Sparse multivariate polynomials over a prime field F_p.

Monomials are packed into a single Python int by :class:`MonomialCodec`:

* the low ``d`` fields hold the exponents themselves, each field 32 bits wide
  with the top bit used as a guard, so ``a | b`` is one masked subtraction;
* the high ``d`` fields hold nonnegative linear forms of the exponents chosen
  so that integer comparison of packed values is the term order.

Both halves are linear in the exponent vector, so monomial multiplication is
integer addition. Every field stays below 2**31 as long as the total degree
does, which is the only overflow condition that has to be checked.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property

from fcompat import kernels
from fcompat.errors import ExponentOverflowError, ParseError, RingMismatchError

FIELD_BITS = 32
FIELD_MASK = (1 << (FIELD_BITS - 1)) - 1
MAX_DEGREE = (1 << (FIELD_BITS - 1)) - 1
MAX_PRIME = (1 << 31) - 1


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


@dataclass(frozen=True)
class FpElement:
    """An element of the prime field F_p."""

    value: int
    p: int

    def __post_init__(self):
        if not (2 <= self.p <= MAX_PRIME and is_prime(self.p)):
            raise ValueError(f"modulus {self.p} is not a prime in [2, 2^31-1]")
        object.__setattr__(self, "value", self.value % self.p)

    def _coerce(self, other):
        if isinstance(other, FpElement):
            if other.p != self.p:
                raise RingMismatchError(f"F_{self.p} vs F_{other.p}")
            return other.value
        return other % self.p

    def __add__(self, other):
        return FpElement(self.value + self._coerce(other), self.p)

    __radd__ = __add__

    def __sub__(self, other):
        return FpElement(self.value - self._coerce(other), self.p)

    def __rsub__(self, other):
        return FpElement(self._coerce(other) - self.value, self.p)

    def __mul__(self, other):
        return FpElement(self.value * self._coerce(other), self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return FpElement(-self.value, self.p)

    def inverse(self) -> FpElement:
        if self.value == 0:
            raise ZeroDivisionError("0 has no inverse in F_p")
        return FpElement(inverse_mod(self.value, self.p), self.p)

    def __truediv__(self, other):
        return self * FpElement(self._coerce(other), self.p).inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return FpElement(pow(self.value, n, self.p), self.p)

    def __int__(self):
        return self.value


def inverse_mod(a: int, p: int) -> int:
    """Inverse of a modulo p by the extended Euclidean algorithm."""
    a %= p
    if a == 0:
        raise ZeroDivisionError("0 has no inverse modulo p")
    r0, r1, s0, s1 = p, a, 0, 1
    while r1:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    return s0 % p


@dataclass(frozen=True)
class TermOrder:
    """A monomial order: ``grevlex``, ``lex`` or ``block`` (grevlex on the
    first ``k`` variables, ties broken by grevlex on the rest)."""

    kind: str = "grevlex"
    k: int = 0

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex", "block"):
            raise ValueError(f"unknown term order {self.kind!r}")
        if self.kind == "block" and self.k < 1:
            raise ValueError("block order needs k >= 1")

    def weights(self, d: int) -> list[tuple[int, ...]]:
        """Linear forms compared in sequence, most significant first."""
        if self.kind == "lex":
            return [tuple(int(i == j) for i in range(d)) for j in range(d)]
        if self.kind == "grevlex":
            return _grevlex_weights(0, d, d)
        if self.k > d:
            raise ValueError("block size exceeds number of variables")
        return _grevlex_weights(0, self.k, d) + _grevlex_weights(self.k, d, d)

    def __str__(self):
        return f"block({self.k})" if self.kind == "block" else self.kind


def _grevlex_weights(lo: int, hi: int, d: int) -> list[tuple[int, ...]]:
    # prefix sums s_hi, s_{hi-1}, ..., s_{lo+1} of the block: comparing them
    # lexicographically is degree-then-reverse-lex
    out = []
    for top in range(hi, lo, -1):
        out.append(tuple(int(lo <= i < top) for i in range(d)))
    return out


class MonomialCodec:
    """Packs exponent vectors into order-compatible, additive ints."""

    def __init__(self, nvars: int, order: TermOrder):
        self.nvars = nvars
        self.order = order
        self.weights = order.weights(nvars)
        self.low_bits = FIELD_BITS * nvars
        self.guard = sum(1 << (FIELD_BITS * i + FIELD_BITS - 1) for i in range(nvars))
        self.low_mask = (1 << self.low_bits) - 1
        self._var = [self.encode(tuple(int(i == j) for i in range(nvars))) for j in range(nvars)]

    def encode(self, exps) -> int:
        if len(exps) != self.nvars:
            raise ValueError(f"expected {self.nvars} exponents, got {len(exps)}")
        total = 0
        low = 0
        for i, a in enumerate(exps):
            if a < 0:
                raise ValueError("negative exponent")
            total += a
            low |= a << (FIELD_BITS * i)
        if total > MAX_DEGREE:
            raise ExponentOverflowError(f"total degree {total} exceeds {MAX_DEGREE}")
        high = 0
        for w in self.weights:
            high = (high << FIELD_BITS) | sum(wi * a for wi, a in zip(w, exps))
        return (high << self.low_bits) | low

    def decode(self, m: int) -> tuple[int, ...]:
        return tuple((m >> (FIELD_BITS * i)) & FIELD_MASK for i in range(self.nvars))

    def degree(self, m: int) -> int:
        return sum(self.decode(m))

    def var(self, i: int) -> int:
        return self._var[i]

    def divides(self, a: int, b: int) -> bool:
        return ((b | self.guard) - a) & self.guard == self.guard

    def lcm(self, a: int, b: int) -> int:
        return self.encode(tuple(max(x, y) for x, y in zip(self.decode(a), self.decode(b))))

    def gcd(self, a: int, b: int) -> int:
        return self.encode(tuple(min(x, y) for x, y in zip(self.decode(a), self.decode(b))))

    def coprime(self, a: int, b: int) -> bool:
        return all(x == 0 or y == 0 for x, y in zip(self.decode(a), self.decode(b)))


_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*$")


class Ring:
    """F_p[x_1..x_d] with a fixed term order."""

    def __init__(self, p: int, variables, order: TermOrder | str = "grevlex"):
        if not (2 <= p <= MAX_PRIME and is_prime(p)):
            raise ValueError(f"characteristic {p} is not a prime in [2, 2^31-1]")
        variables = tuple(variables)
        for v in variables:
            if not _IDENT.match(v):
                raise ValueError(f"bad variable name {v!r}")
        if len(set(variables)) != len(variables):
            raise ValueError("duplicate variable names")
        if isinstance(order, str):
            order = TermOrder(order)
        self.p = p
        self.variables = variables
        self.order = order
        self.codec = MonomialCodec(len(variables), order)
        self._index = {v: i for i, v in enumerate(variables)}

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def _key(self):
        return (self.p, self.variables, self.order)

    def __eq__(self, other):
        return isinstance(other, Ring) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"Ring(F_{self.p}[{', '.join(self.variables)}], {self.order})"

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise ValueError(f"unknown variable {name!r}") from None

    # constructors

    def zero(self) -> Polynomial:
        return Polynomial(self, {})

    def one(self) -> Polynomial:
        return self.constant(1)

    def constant(self, c: int) -> Polynomial:
        c %= self.p
        return Polynomial(self, {0: c} if c else {})

    def gen(self, v) -> Polynomial:
        i = v if isinstance(v, int) else self.index(v)
        return Polynomial(self, {self.codec.var(i): 1})

    def gens(self) -> list[Polynomial]:
        return [self.gen(i) for i in range(self.nvars)]

    def monomial(self, exps, coeff: int = 1) -> Polynomial:
        coeff %= self.p
        return Polynomial(self, {self.codec.encode(tuple(exps)): coeff} if coeff else {})

    def from_dict(self, terms) -> Polynomial:
        """Build from ``{exponent tuple: coefficient}``."""
        out = {}
        for exps, c in terms.items():
            m = self.codec.encode(tuple(exps))
            v = (out.get(m, 0) + c) % self.p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial(self, out)

    def parse(self, text: str) -> Polynomial:
        return parse_polynomial(text, self)

    def with_order(self, order) -> Ring:
        return Ring(self.p, self.variables, order)

    def extend(self, new_vars, order) -> Ring:
        """Ring with ``new_vars`` prepended (used for elimination)."""
        return Ring(self.p, tuple(new_vars) + self.variables, order)

    def drop(self, names) -> Ring:
        names = set(names)
        return Ring(self.p, [v for v in self.variables if v not in names], self.order)


class Polynomial:
    """Immutable sparse polynomial; ``terms`` maps packed monomials to
    coefficients in ``[0, p)`` and never stores zeros."""

    __slots__ = ("ring", "terms", "__dict__")

    def __init__(self, ring: Ring, terms: dict):
        self.ring = ring
        self.terms = terms

    # structure

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    @cached_property
    def lead_monomial(self) -> int:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return max(self.terms)

    @property
    def lead_coeff(self) -> int:
        return self.terms[self.lead_monomial]

    @property
    def lead_exponents(self) -> tuple[int, ...]:
        return self.ring.codec.decode(self.lead_monomial)

    def sorted_terms(self) -> list[tuple[int, int]]:
        """(packed monomial, coefficient) pairs in descending term order."""
        return sorted(self.terms.items(), reverse=True)

    def items(self) -> list[tuple[tuple[int, ...], int]]:
        dec = self.ring.codec.decode
        return [(dec(m), c) for m, c in self.sorted_terms()]

    def degree(self) -> int:
        if not self.terms:
            return -1
        dec = self.ring.codec.decode
        return max(sum(dec(m)) for m in self.terms)

    def is_homogeneous(self) -> bool:
        dec = self.ring.codec.decode
        return len({sum(dec(m)) for m in self.terms}) <= 1

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def constant_term(self) -> int:
        return self.terms.get(0, 0)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and 0 in self.terms)

    def support(self) -> set[int]:
        """Indices of variables that occur."""
        dec = self.ring.codec.decode
        used = set()
        for m in self.terms:
            used.update(i for i, a in enumerate(dec(m)) if a)
        return used

    def monic(self) -> Polynomial:
        if not self.terms:
            return self
        c = self.lead_coeff
        if c == 1:
            return self
        inv = inverse_mod(c, self.ring.p)
        return Polynomial(self.ring, kernels.poly_scale(self.terms, inv, 0, self.ring.p))

    # arithmetic

    def _check(self, other):
        if not isinstance(other, Polynomial):
            if isinstance(other, int):
                return self.ring.constant(other)
            return NotImplemented
        if other.ring != self.ring:
            raise RingMismatchError(f"{self.ring!r} vs {other.ring!r}")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return Polynomial(self.ring, kernels.poly_add(self.terms, other.terms, self.ring.p))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, kernels.poly_scale(self.terms, -1, 0, self.ring.p))

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return Polynomial(self.ring, kernels.poly_sub_scaled(self.terms, other.terms, 1, 0, self.ring.p))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return Polynomial(self.ring, kernels.poly_scale(self.terms, other, 0, self.ring.p))
        other = self._check(other)
        if other is NotImplemented:
            return other
        if self.degree() + other.degree() > MAX_DEGREE:
            raise ExponentOverflowError("product degree exceeds the exponent range")
        return Polynomial(self.ring, kernels.poly_mul(self.terms, other.terms, self.ring.p))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        if self.degree() * n > MAX_DEGREE:
            raise ExponentOverflowError("power degree exceeds the exponent range")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def mul_term(self, coeff: int, shift: int) -> Polynomial:
        """Multiply by ``coeff * x^shift`` (shift a packed monomial)."""
        return Polynomial(self.ring, kernels.poly_scale(self.terms, coeff, shift, self.ring.p))

    def frobenius(self, e: int) -> Polynomial:
        """f^(p^e): exponents scale by p^e, coefficients are fixed by Frobenius on F_p."""
        if e < 1:
            raise ValueError("e must be >= 1")
        q = self.ring.p ** e
        if self.degree() * q > MAX_DEGREE:
            raise ExponentOverflowError(f"degree {self.degree()} * {q} exceeds the exponent range")
        # packing is linear with no carries below MAX_DEGREE
        return Polynomial(self.ring, {m * q: c for m, c in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def to_ring(self, ring: Ring, mapping=None) -> Polynomial:
        """Re-embed into ``ring``; variables matched by name unless ``mapping``
        (source index -> target index) is given."""
        if mapping is None:
            mapping = [ring.index(v) for v in self.ring.variables]
        dec = self.ring.codec.decode
        enc = ring.codec.encode
        out = {}
        n = ring.nvars
        for m, c in self.terms.items():
            src = dec(m)
            tgt = [0] * n
            for i, a in enumerate(src):
                if a:
                    tgt[mapping[i]] += a
            key = enc(tuple(tgt))
            v = (out.get(key, 0) + c) % ring.p
            if v:
                out[key] = v
            else:
                out.pop(key, None)
        return Polynomial(ring, out)

    def substitute(self, index: int, value: Polynomial) -> Polynomial:
        """Replace variable ``index`` by ``value`` (same ring)."""
        dec = self.ring.codec.decode
        enc = self.ring.codec.encode
        result = self.ring.zero()
        powers = {0: self.ring.one()}
        grouped: dict[int, dict] = {}
        for m, c in self.terms.items():
            exps = list(dec(m))
            k = exps[index]
            exps[index] = 0
            grouped.setdefault(k, {})[enc(tuple(exps))] = c
        for k in sorted(grouped):
            if k not in powers:
                powers[k] = value ** k
            result = result + Polynomial(self.ring, grouped[k]) * powers[k]
        return result

    def evaluate(self, point) -> int:
        p = self.ring.p
        total = 0
        for exps, c in self.items():
            t = c
            for a, v in zip(exps, point):
                if a:
                    t = t * pow(v, a, p) % p
            total += t
        return total % p

    def derivative(self, index: int) -> Polynomial:
        dec = self.ring.codec.decode
        enc = self.ring.codec.encode
        p = self.ring.p
        out = {}
        for m, c in self.terms.items():
            exps = list(dec(m))
            a = exps[index]
            if a % p == 0:
                continue
            exps[index] = a - 1
            out[enc(tuple(exps))] = (c * a) % p
        return Polynomial(self.ring, out)

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r}, {self.ring!r})"


def format_monomial(exps, names) -> str:
    parts = []
    for a, v in zip(exps, names):
        if a == 1:
            parts.append(v)
        elif a > 1:
            parts.append(f"{v}^{a}")
    return "*".join(parts)


def format_polynomial(f: Polynomial) -> str:
    """Terms in descending term order, coefficients as residues in [0, p)."""
    if not f.terms:
        return "0"
    names = f.ring.variables
    out = []
    for exps, c in f.items():
        mono = format_monomial(exps, names)
        if not mono:
            out.append(str(c))
        elif c == 1:
            out.append(mono)
        else:
            out.append(f"{c}*{mono}")
    return " + ".join(out)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


def _tokenize(text: str):
    pos = 0
    tokens = []
    n = len(text)
    while pos < n:
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        if m.group(1) is not None:
            tokens.append(("num", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            tokens.append(("ident", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*^":
                raise ParseError(f"unexpected character {ch!r}", m.start(3))
            tokens.append((ch, ch, m.start(3)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


def parse_polynomial(text: str, ring: Ring) -> Polynomial:
    """Parse ``expr := term (('+'|'-') term)*``,
    ``term := coeff? ('*'? var ('^' nat)?)*``; a leading sign is accepted."""
    tokens = _tokenize(text)
    pos = 0
    p = ring.p
    n = ring.nvars
    enc = ring.codec.encode
    result: dict[int, int] = {}

    def peek():
        return tokens[pos]

    sign = 1
    if peek()[0] in "+-" and peek()[0] != "end":
        sign = -1 if peek()[0] == "-" else 1
        pos += 1
    if peek()[0] == "end":
        raise ParseError("empty expression", peek()[2])
    while True:
        coeff = 1
        exps = [0] * n
        seen = False
        expect_factor = True
        while True:
            kind, val, at = peek()
            if kind == "num":
                coeff = coeff * int(val) % p
                pos += 1
            elif kind == "ident":
                if val not in ring._index:
                    raise ParseError(f"unknown variable {val!r}", at)
                pos += 1
                power = 1
                if peek()[0] == "^":
                    pos += 1
                    k2, v2, a2 = peek()
                    if k2 != "num":
                        raise ParseError("expected exponent after '^'", a2)
                    power = int(v2)
                    if power > MAX_DEGREE:
                        raise ExponentOverflowError(f"exponent {power} at position {a2} exceeds {MAX_DEGREE}")
                    pos += 1
                exps[ring._index[val]] += power
            elif expect_factor:
                raise ParseError(f"expected coefficient or variable, got {val or 'end of input'!r}", at)
            else:
                break
            seen = True
            expect_factor = False
            if peek()[0] == "*":
                pos += 1
                expect_factor = True
        if not seen:
            raise ParseError("empty term", peek()[2])
        if sum(exps) > MAX_DEGREE:
            raise ExponentOverflowError("term degree exceeds the exponent range")
        m = enc(tuple(exps))
        v = (result.get(m, 0) + sign * coeff) % p
        if v:
            result[m] = v
        else:
            result.pop(m, None)
        kind, val, at = peek()
        if kind == "end":
            break
        if kind not in "+-":
            raise ParseError(f"unexpected token {val!r}", at)
        sign = -1 if kind == "-" else 1
        pos += 1
    return Polynomial(ring, result)

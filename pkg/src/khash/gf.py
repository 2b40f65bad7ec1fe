"""Finite fields GF(p^e) with elements encoded as integers in [0, q).

An element with polynomial coefficients c_0 + c_1 x + ... + c_{e-1} x^{e-1}
over GF(p) is stored as the index sum(c_i * p**i).  Index 0 is the additive
identity and index 1 the multiplicative identity.  For q <= 64 full addition
and multiplication tables are built (numpy uint8) and used by the code-search
paths; larger fields fall back to polynomial arithmetic per call.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field

import numpy as np

MAX_ORDER = 2**16
TABLE_ORDER = 64


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def factorint(n: int) -> dict[int, int]:
    """Trial-division factorization; n is at most a few million here."""
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def prime_power(q: int) -> tuple[int, int] | None:
    """Return (p, e) with q == p**e, or None if q is not a prime power."""
    if q < 2:
        return None
    f = factorint(q)
    if len(f) != 1:
        return None
    ((p, e),) = f.items()
    return p, e


def prime_powers(lo: int, hi: int) -> list[int]:
    """All prime powers q with lo <= q <= hi, ascending (sieve, then powers)."""
    if hi < 2:
        return []
    sieve = bytearray([1]) * (hi + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, int(hi**0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, hi + 1, i)))
    out = set()
    for p in range(2, hi + 1):
        if sieve[p]:
            pe = p
            while pe <= hi:
                out.add(pe)
                pe *= p
    return sorted(x for x in out if x >= lo)


# -- polynomials over GF(p), coefficient lists low degree first ---------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _polymod(a: list[int], m: list[int], p: int) -> list[int]:
    a = _trim(list(a))
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        _trim(a)
    return a


def _monic_polys(p: int, deg: int):
    """Monic polynomials of degree deg, lexicographic with c_0 compared first."""
    for tail in itertools.product(range(p), repeat=deg):
        # product varies the last position fastest, so c_0 is the slowest key
        yield list(tail) + [1]


def is_irreducible(poly: list[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg//2."""
    deg = len(poly) - 1
    if deg < 1 or poly[-1] % p == 0:
        return False
    for d in range(1, deg // 2 + 1):
        for f in _monic_polys(p, d):
            if not _polymod(poly, f, p):
                return False
    return True


def smallest_irreducible(p: int, e: int) -> list[int]:
    for poly in _monic_polys(p, e):
        if is_irreducible(poly, p):
            return poly
    raise FieldError(f"no irreducible polynomial of degree {e} over GF({p})")  # pragma: no cover


# -- the field -----------------------------------------------------------------

@dataclass(frozen=True)
class FieldSpec:
    """GF(p^e) with an explicit modulus (empty tuple for prime fields)."""

    p: int
    e: int
    modulus: tuple[int, ...] = ()
    _tables: dict = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if not is_prime(self.p):
            raise FieldError(f"{self.p} is not prime")
        if self.e < 1:
            raise FieldError("exponent must be >= 1")
        if self.p**self.e > MAX_ORDER:
            raise FieldError(f"field order {self.p}^{self.e} exceeds {MAX_ORDER}")
        if self.e > 1:
            if len(self.modulus) != self.e + 1 or self.modulus[-1] != 1:
                raise FieldError("modulus must be monic of degree e")
            if not is_irreducible(list(self.modulus), self.p):
                raise FieldError(f"modulus {list(self.modulus)} is reducible over GF({self.p})")

    @property
    def q(self) -> int:
        return self.p**self.e

    def __str__(self):
        if self.e == 1:
            return str(self.p)
        return f"{self.p}^{self.e} mod " + " ".join(map(str, self.modulus))

    def elements(self) -> range:
        return range(self.q)

    # element <-> coefficient vector
    def coeffs(self, a: int) -> list[int]:
        out = []
        for _ in range(self.e):
            a, r = divmod(a, self.p)
            out.append(r)
        return out

    def from_coeffs(self, c) -> int:
        return sum(int(ci) * self.p**i for i, ci in enumerate(c))

    def _check(self, a: int) -> int:
        if not 0 <= a < self.q:
            raise FieldError(f"{a} is not an element of GF({self.q})")
        return a

    def add(self, a: int, b: int) -> int:
        self._check(a), self._check(b)
        if self.e == 1:
            return (a + b) % self.p
        return self.from_coeffs((x + y) % self.p for x, y in zip(self.coeffs(a), self.coeffs(b)))

    def neg(self, a: int) -> int:
        self._check(a)
        if self.e == 1:
            return -a % self.p
        return self.from_coeffs(-x % self.p for x in self.coeffs(a))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        self._check(a), self._check(b)
        if self.e == 1:
            return a * b % self.p
        ca, cb = self.coeffs(a), self.coeffs(b)
        prod = [0] * (2 * self.e - 1)
        for i, x in enumerate(ca):
            if x:
                for j, y in enumerate(cb):
                    prod[i + j] = (prod[i + j] + x * y) % self.p
        return self.from_coeffs(_polymod(prod, list(self.modulus), self.p))

    def pow(self, a: int, n: int) -> int:
        result, base = 1, a
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def inv(self, a: int) -> int:
        if self._check(a) == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        # a^(q-2) = a^-1 in the multiplicative group of order q-1
        return self.pow(a, self.q - 2)

    def dot(self, u, v) -> int:
        if len(u) != len(v):
            raise FieldError(f"length mismatch: {len(u)} != {len(v)}")
        acc = 0
        for x, y in zip(u, v):
            acc = self.add(acc, self.mul(int(x), int(y)))
        return acc

    # -- tables for the vectorised paths -------------------------------------
    def tables(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """(ADD, MUL, NEG, INV) lookup tables; INV[0] is 0 and must not be used."""
        if self.q > TABLE_ORDER:
            raise FieldError(f"tables are only built for q <= {TABLE_ORDER}")
        if "t" not in self._tables:
            q = self.q
            add = np.empty((q, q), dtype=np.uint8)
            mul = np.empty((q, q), dtype=np.uint8)
            for a in range(q):
                for b in range(a, q):
                    add[a, b] = add[b, a] = self.add(a, b)
                    mul[a, b] = mul[b, a] = self.mul(a, b)
            neg = np.array([self.neg(a) for a in range(q)], dtype=np.uint8)
            inv = np.zeros(q, dtype=np.uint8)
            for a in range(1, q):
                inv[a] = int(np.nonzero(mul[a] == 1)[0][0])
            for t in (add, mul, neg, inv):
                t.setflags(write=False)
            self._tables["t"] = (add, mul, neg, inv)
        return self._tables["t"]


@functools.lru_cache(maxsize=None)
def field_new(p: int, e: int = 1) -> FieldSpec:
    """GF(p^e) using the lexicographically smallest monic irreducible modulus."""
    if not is_prime(p):
        raise FieldError(f"{p} is not prime")
    if e < 1 or p**e > MAX_ORDER:
        raise FieldError(f"field order {p}^{e} out of supported range [2, {MAX_ORDER}]")
    if e == 1:
        return FieldSpec(p, 1)
    return FieldSpec(p, e, tuple(smallest_irreducible(p, e)))


def field_of_order(q: int) -> FieldSpec:
    pe = prime_power(q)
    if pe is None:
        raise FieldError(f"{q} is not a prime power")
    return field_new(*pe)


def parse_field(text: str) -> FieldSpec:
    """Parse "q", "p^e" or "p^e mod c0 c1 ... ce" (the serialized form)."""
    parts = text.split()
    if not parts:
        raise FieldError("empty field description")
    head = parts[0]
    if "^" in head:
        p, e = (int(s) for s in head.split("^"))
    else:
        pe = prime_power(int(head))
        if pe is None:
            raise FieldError(f"{head} is not a prime power")
        p, e = pe
    if len(parts) > 1:
        if parts[1] != "mod":
            raise FieldError(f"unexpected token {parts[1]!r}")
        mod = tuple(int(c) for c in parts[2:])
        if e == 1:
            raise FieldError("prime fields take no modulus")
        return FieldSpec(p, e, mod)
    return field_new(p, e)

"""Table-driven arithmetic in small finite fields GF(p^k).

Elements are the integers ``0..q-1``; element ``e`` encodes the polynomial
whose coefficient of ``x**i`` is the i-th base-p digit of ``e`` (constant
term least significant).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

MAX_ORDER = 64


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, int(n**0.5) + 1))


def prime_power(q: int) -> tuple[int, int] | None:
    """Return ``(p, k)`` with ``p**k == q``, or None if q is not a prime power."""
    if q < 2:
        return None
    for p in range(2, q + 1):
        if q % p == 0:
            k = 0
            while q % p == 0:
                q //= p
                k += 1
            return (p, k) if q == 1 else None
    return None


def _poly_mod(a: list[int], b: list[int], p: int) -> list[int]:
    """Remainder of a / b over GF(p); b monic, coefficient lists low-to-high."""
    a = a[:]
    db = len(b) - 1
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] % p
        if c:
            for j in range(db + 1):
                a[i - db + j] = (a[i - db + j] - c * b[j]) % p
    return [x % p for x in a[:db]]


def is_irreducible(poly: tuple[int, ...], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    k = len(poly) - 1
    for d in range(1, k // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            rem = _poly_mod(list(poly), list(low) + [1], p)
            if not any(rem):
                return False
    return True


def find_modulus(p: int, k: int) -> tuple[int, ...]:
    """First monic irreducible of degree k, coefficients in lexicographic order."""
    for low in itertools.product(range(p), repeat=k):
        poly = tuple(low) + (1,)
        if is_irreducible(poly, p):
            return poly
    raise AssertionError(f"no irreducible polynomial of degree {k} over GF({p})")


@dataclass(frozen=True, eq=False)
class FiniteField:
    p: int
    k: int
    modulus: tuple[int, ...]
    add_table: np.ndarray
    mul_table: np.ndarray
    inv_table: np.ndarray

    @property
    def q(self) -> int:
        return self.p**self.k

    def __repr__(self) -> str:
        return f"GF({self.q})"

    def __eq__(self, other):
        return (
            isinstance(other, FiniteField)
            and (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus)
        )

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    def add(self, a: int, b: int) -> int:
        return int(self.add_table[a, b])

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_table[a, b])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no multiplicative inverse")
        return int(self.inv_table[a])


def _digits(e: int, p: int, k: int) -> list[int]:
    out = []
    for _ in range(k):
        out.append(e % p)
        e //= p
    return out


def _undigits(ds: list[int], p: int) -> int:
    e = 0
    for d in reversed(ds):
        e = e * p + d
    return e


def make_field(p: int, k: int = 1) -> FiniteField:
    """Build GF(p^k) with the lexicographically first irreducible modulus."""
    if not is_prime(p):
        raise ValueError(f"characteristic {p} is not prime")
    if k < 1:
        raise ValueError("extension degree must be >= 1")
    q = p**k
    if q > MAX_ORDER:
        raise ValueError(f"field order {q} exceeds cap {MAX_ORDER}")

    modulus = find_modulus(p, k)
    digits = [_digits(e, p, k) for e in range(q)]

    add = np.empty((q, q), dtype=np.int64)
    mul = np.empty((q, q), dtype=np.int64)
    for a in range(q):
        da = digits[a]
        for b in range(q):
            db = digits[b]
            add[a, b] = _undigits([(x + y) % p for x, y in zip(da, db)], p)
            prod = [0] * (2 * k - 1)
            for i, x in enumerate(da):
                if x:
                    for j, y in enumerate(db):
                        prod[i + j] += x * y
            mul[a, b] = _undigits(_poly_mod(prod, list(modulus), p), p)

    inv = np.zeros(q, dtype=np.int64)
    for a in range(1, q):
        (b,) = np.flatnonzero(mul[a] == 1)
        inv[a] = b

    for t in (add, mul, inv):
        t.setflags(write=False)
    return FiniteField(p, k, modulus, add, mul, inv)


def field_of_order(q: int) -> FiniteField:
    pk = prime_power(q)
    if pk is None:
        raise ValueError(f"no field of order {q}")
    return make_field(*pk)


def field_add(f: FiniteField, a: int, b: int) -> int:
    return f.add(a, b)


def field_mul(f: FiniteField, a: int, b: int) -> int:
    return f.mul(a, b)


def field_inv(f: FiniteField, a: int) -> int:
    return f.inv(a)

"""Finite fields F_q with q = p^e.

Elements are canonical integers in ``range(q)``: the coefficient vector
(c_0, ..., c_{e-1}) of a polynomial modulo the defining irreducible
polynomial, read as the base-p number c_0 + c_1 p + ... .  For e = 1 this is
ordinary arithmetic mod p.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Sequence

from .errors import NonPrimeCharacteristic, ReduciblePolynomial, UnsupportedOrder, InputError

MAX_ORDER = 1 << 16
TABLE_ORDER = 16  # full add/mul tables for extension fields up to this order


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


def prime_power(q: int) -> tuple[int, int]:
    """Split q into (p, e) with q = p**e, or raise NonPrimeCharacteristic."""
    if q < 2:
        raise NonPrimeCharacteristic(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    e, rest = 0, q
    while rest % p == 0:
        rest //= p
        e += 1
    if rest != 1:
        raise NonPrimeCharacteristic(f"{q} is not a prime power")
    return p, e


# -- polynomials over F_p as coefficient lists, lowest degree first ---------

def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    """Remainder of a modulo b over F_p (b nonzero)."""
    a = _poly_trim(list(a))
    b = _poly_trim(list(b))
    inv_lead = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        factor = a[-1] * inv_lead % p
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[shift + i] = (a[shift + i] - factor * c) % p
        _poly_trim(a)
    return a


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Exhaustive factor check: no monic polynomial of degree 1..e//2 divides."""
    e = len(modulus) - 1
    for deg in range(1, e // 2 + 1):
        for low in itertools.product(range(p), repeat=deg):
            if not _poly_mod(modulus, list(low) + [1], p):
                return False
    return True


@lru_cache(maxsize=None)
def default_modulus(p: int, e: int) -> tuple[int, ...]:
    """Smallest monic irreducible of degree e over F_p, ordered by the
    base-p integer of its lower coefficients (c_0 least significant)."""
    if p**e > MAX_ORDER:
        raise UnsupportedOrder(f"no built-in modulus for q = {p}^{e} > 2^16")
    for code in range(p**e):
        low = [(code // p**i) % p for i in range(e)]
        cand = tuple(low + [1])
        if low[0] != 0 and is_irreducible(cand, p):
            return cand
    raise AssertionError("unreachable: irreducible polynomials exist in every degree")


@dataclass(frozen=True)
class Field:
    """The finite field F_q.  Build instances with :func:`field_make` or :func:`GF`."""

    p: int
    e: int = 1
    modulus: tuple[int, ...] | None = None
    _mul: list | None = dc_field(default=None, compare=False, repr=False)
    _add: list | None = dc_field(default=None, compare=False, repr=False)
    _inv: list | None = dc_field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.e > 1 and self.q <= TABLE_ORDER:
            q = self.q
            add = [[self._add_digits(a, b) for b in range(q)] for a in range(q)]
            mul = [[self._mul_poly(a, b) for b in range(q)] for a in range(q)]
            inv = [0] * q
            for a in range(1, q):
                inv[a] = next(b for b in range(1, q) if mul[a][b] == 1)
            object.__setattr__(self, "_add", add)
            object.__setattr__(self, "_mul", mul)
            object.__setattr__(self, "_inv", inv)

    @property
    def q(self) -> int:
        return self.p**self.e

    @property
    def is_prime(self) -> bool:
        return self.e == 1

    def __repr__(self) -> str:
        if self.e == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.e}, modulus={list(self.modulus)})"

    # -- digit helpers for e > 1 --------------------------------------------
    def digits(self, a: int) -> list[int]:
        p = self.p
        return [(a // p**i) % p for i in range(self.e)]

    def from_digits(self, ds: Sequence[int]) -> int:
        v = 0
        for c in reversed(ds):
            v = v * self.p + c % self.p
        return v

    def _add_digits(self, a: int, b: int) -> int:
        p = self.p
        return self.from_digits([(x + y) % p for x, y in zip(self.digits(a), self.digits(b))])

    def _mul_poly(self, a: int, b: int) -> int:
        p = self.p
        da, db = self.digits(a), self.digits(b)
        prod = [0] * (2 * self.e - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        return self.from_digits(_poly_mod(prod, self.modulus, p))

    # -- arithmetic ------------------------------------------------------------
    def add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        if self._add is not None:
            return self._add[a][b]
        return self._add_digits(a, b)

    def neg(self, a: int) -> int:
        if self.e == 1:
            return -a % self.p
        return self.from_digits([-c for c in self.digits(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.e == 1:
            return a * b % self.p
        if self._mul is not None:
            return self._mul[a][b]
        if a == 0 or b == 0:
            return 0
        return self._mul_poly(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        if self.e == 1:
            return pow(a, self.p - 2, self.p)
        if self._inv is not None:
            return self._inv[a]
        return self.pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        if self.e == 1:
            return pow(a, k, self.p)
        result, base = 1, a
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def elements(self) -> range:
        return range(self.q)

    def nonzero(self) -> range:
        return range(1, self.q)

    def from_int(self, v: int) -> int:
        """Read an integer literal: canonical codes pass through, negative
        literals denote elements of the prime subfield and are reduced mod p."""
        if v < 0:
            return self.neg((-v) % self.p)
        if self.e == 1:
            return v % self.p
        if v >= self.q:
            raise InputError(f"entry {v} outside [0, {self.q})")
        return v

    def sum(self, values) -> int:
        if self.e == 1:
            return sum(values) % self.p
        total = 0
        for v in values:
            total = self.add(total, v)
        return total

    def dot(self, u: Sequence[int], v: Sequence[int]) -> int:
        if self.e == 1:
            return sum(a * b for a, b in zip(u, v)) % self.p
        total = 0
        for a, b in zip(u, v):
            if a and b:
                total = self.add(total, self.mul(a, b))
        return total

    def axpy(self, c: int, x: Sequence[int], y: Sequence[int]) -> list[int]:
        """Return y + c*x componentwise."""
        if self.e == 1:
            p = self.p
            return [(b + c * a) % p for a, b in zip(x, y)]
        return [self.add(b, self.mul(c, a)) if a else b for a, b in zip(x, y)]

    def scale(self, c: int, x: Sequence[int]) -> list[int]:
        if self.e == 1:
            p = self.p
            return [c * a % p for a in x]
        return [self.mul(c, a) for a in x]


def field_make(p: int, e: int = 1, modulus: Sequence[int] | None = None) -> Field:
    """Construct F_{p^e}.  ``modulus`` lists c_0..c_e of a monic irreducible
    polynomial; when omitted for e > 1 the built-in choice is used."""
    return _field_make(p, e, None if modulus is None else tuple(int(c) for c in modulus))


@lru_cache(maxsize=None)
def _field_make(p: int, e: int, modulus: tuple[int, ...] | None) -> Field:
    if not is_prime(p):
        raise NonPrimeCharacteristic(f"characteristic {p} is not prime")
    if e < 1:
        raise InputError("extension degree must be >= 1")
    if e == 1:
        if p > MAX_ORDER:
            raise UnsupportedOrder(f"q = {p} exceeds 2^16")
        return Field(p, 1, None)
    if modulus is None:
        modulus = default_modulus(p, e)
    else:
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != e + 1 or modulus[-1] != 1:
            raise ReduciblePolynomial(f"modulus must be monic of degree {e}")
        if not is_irreducible(modulus, p):
            raise ReduciblePolynomial(f"{list(modulus)} is reducible over F_{p}")
    return Field(p, e, modulus)


def GF(q: int, modulus: Sequence[int] | None = None) -> Field:
    p, e = prime_power(q)
    return field_make(p, e, modulus)

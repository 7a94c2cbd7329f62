"""Coefficient fields: the rationals and small finite fields.

Finite field elements are plain ints. For a prime ``p`` they are residues
mod ``p``; for ``q = p^k`` they encode polynomials over F_p in base ``p``
(digit ``i`` is the coefficient of ``x^i``) reduced modulo a fixed monic
irreducible polynomial, with arithmetic served from precomputed tables.
"""

from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache
from itertools import product


def _factor_prime_power(q: int) -> tuple[int, int]:
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    k, r = 0, q
    while r % p == 0:
        r //= p
        k += 1
    if r != 1:
        raise ValueError(f"{q} is not a prime power")
    return p, k


class Rationals:
    name = "Q"
    char = 0
    q = None

    zero = Fraction(0)
    one = Fraction(1)

    def from_int(self, a: int) -> Fraction:
        return Fraction(a)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)

    def random(self, rng: random.Random, spread: int = 5) -> Fraction:
        return Fraction(rng.randint(-spread, spread))

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "Q"


QQ = Rationals()


def _poly_mulmod(a, b, modulus, p):
    """Multiply coefficient lists over F_p modulo a monic polynomial."""
    k = len(modulus) - 1
    prod = [0] * (2 * k - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    for d in range(len(prod) - 1, k - 1, -1):
        c = prod[d]
        if c:
            for i in range(k + 1):
                prod[d - k + i] = (prod[d - k + i] - c * modulus[i]) % p
    return prod[:k]


def _is_irreducible(modulus, p) -> bool:
    # a degree-k polynomial is irreducible iff it has no monic factor of degree <= k/2
    k = len(modulus) - 1
    for d in range(1, k // 2 + 1):
        for low in product(range(p), repeat=d):
            f = list(low) + [1]
            r = list(modulus)
            for top in range(len(r) - 1, d - 1, -1):
                c = r[top]
                if c:
                    for i in range(d + 1):
                        r[top - d + i] = (r[top - d + i] - c * f[i]) % p
            if not any(r[:d]):
                return False
    return True


def _irreducible(p: int, k: int) -> list[int]:
    for low in product(range(p), repeat=k):
        modulus = list(low) + [1]
        if low[0] and _is_irreducible(modulus, p):
            return modulus
    raise ArithmeticError("no irreducible polynomial found")


class FiniteField:
    def __init__(self, q: int):
        p, k = _factor_prime_power(q)
        self.q, self.char, self.degree = q, p, k
        self.name = f"F{q}"
        self.zero, self.one = 0, 1
        if k == 1:
            self._add = self._mul = None
            self._inv = [0] + [pow(a, p - 2, p) for a in range(1, p)]
            return
        self.modulus = _irreducible(p, k)
        digits = [self._digits(a) for a in range(q)]
        enc = self._encode
        self._add = [[enc([(x + y) % p for x, y in zip(da, db)]) for db in digits] for da in digits]
        self._mul = [[enc(_poly_mulmod(da, db, self.modulus, p)) for db in digits] for da in digits]
        self._neg = [enc([(-x) % p for x in da]) for da in digits]
        self._inv = [0] * q
        for a in range(1, q):
            self._inv[a] = next(b for b in range(1, q) if self._mul[a][b] == 1)

    def _digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.degree):
            out.append(a % self.char)
            a //= self.char
        return out

    def _encode(self, ds) -> int:
        a = 0
        for d in reversed(ds):
            a = a * self.char + d
        return a

    def from_int(self, a: int) -> int:
        return a % self.char

    def add(self, a, b):
        if self._add is None:
            return (a + b) % self.q
        return self._add[a][b]

    def neg(self, a):
        if self._add is None:
            return (-a) % self.q
        return self._neg[a]

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self._mul is None:
            return a * b % self.q
        return self._mul[a][b]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self._inv[a]

    def elements(self) -> range:
        return range(self.q)

    def random(self, rng: random.Random) -> int:
        return rng.randrange(self.q)

    def __eq__(self, other):
        return isinstance(other, FiniteField) and other.q == self.q

    def __hash__(self):
        return hash(("F", self.q))

    def __repr__(self):
        return self.name


@lru_cache(maxsize=None)
def GF(q: int) -> FiniteField:
    return FiniteField(q)


def field_from_name(name: str):
    """'Q' or 'F<q>' (e.g. 'F5', 'F9')."""
    name = name.strip()
    if name.upper() == "Q":
        return QQ
    if name[:1].upper() == "F" and name[1:].isdigit():
        return GF(int(name[1:]))
    raise ValueError(f"unknown field {name!r}; expected Q or F<q>")

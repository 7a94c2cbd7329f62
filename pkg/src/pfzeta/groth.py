"""Grothendieck classes as fractions of polynomials in L.

Every class handled here (classical groups, stabilizers and orbits of jets of
skew-symmetric matrices) is a ``PolyFrac`` in ``L``; the virtual Poincare,
Euler and point-count specializations all factor through that representation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exact import L, PolyFrac, order_at_one
from .strata import b_of_lambda, blocks, validate_lambda

GrothClass = PolyFrac


@lru_cache(maxsize=None)
def class_gl(k: int) -> PolyFrac:
    """[GL_k] = L^(k(k-1)/2) (L^k - 1) ... (L - 1)."""
    if k < 0:
        raise ValueError("k must be non-negative")
    out = L ** (k * (k - 1) // 2)
    for i in range(1, k + 1):
        out = out * (L**i - 1)
    return out


@lru_cache(maxsize=None)
def class_sp(k: int) -> PolyFrac:
    """[Sp_2k] = L^(k^2) (L^2k - 1) (L^(2k-2) - 1) ... (L^2 - 1)."""
    if k < 0:
        raise ValueError("k must be non-negative")
    out = L ** (k * k)
    for i in range(1, k + 1):
        out = out * (L ** (2 * i) - 1)
    return out


@lru_cache(maxsize=None)
def class_csp(k: int) -> PolyFrac:
    """[CSp_2k] = [Sp_2k] (L - 1); the scalar factor is kept at k = 0."""
    return class_sp(k) * (L - 1)


@dataclass(frozen=True)
class BlockData:
    """Block decomposition of a lambda tuple at finite level ``l``.

    ``n_i`` are multiplicities of the distinct finite values ``lambda_bar``;
    ``N_i`` their partial sums; ``zero_pairs`` counts entries equal to l + 1.
    """

    m: int
    l: int
    lambda_bar: tuple[int, ...]
    n_i: tuple[int, ...]
    zero_pairs: int

    @property
    def q(self) -> int:
        return len(self.n_i)

    @property
    def N_i(self) -> tuple[int, ...]:
        out, acc = [], 0
        for x in self.n_i:
            acc += x
            out.append(acc)
        return tuple(out)

    @property
    def N_q(self) -> int:
        return sum(self.n_i)

    @classmethod
    def from_lambda(cls, m: int, lam, l: int) -> "BlockData":
        if l < 0:
            raise ValueError("level must be a non-negative integer")
        lam = validate_lambda(lam, m // 2, l)
        finite = [x for x in lam if x <= l]
        bl = blocks(finite)
        return cls(
            m=m,
            l=l,
            lambda_bar=tuple(v for v, _ in bl),
            n_i=tuple(c for _, c in bl),
            zero_pairs=len(lam) - len(finite),
        )


def _lpow(e: int) -> PolyFrac:
    return PolyFrac.monomial(e)


def stabilizer_class(m: int, lam, l: int) -> PolyFrac:
    """Class of the stabilizer of the normal form delta_{lam,l} in GL_m of l-jets."""
    B = BlockData.from_lambda(m, lam, l)
    lb, ns, Nq = B.lambda_bar, B.n_i, B.N_q
    q = B.q
    e = (2 * Nq * Nq - 2 * sum(x * x for x in ns)) * (l + 1)
    for i in range(q):
        for j in range(i + 1, q):
            e += 4 * lb[i] * ns[i] * ns[j]
    for i in range(q):
        e += (l - lb[i]) * ns[i] * (2 * ns[i] + 1)
        e += 4 * lb[i] * ns[i] * ns[i]
    h = _lpow(e)
    for ni in ns:
        h = h * class_sp(ni)
    r = m - 2 * Nq
    # the complementary block: free A_2, GL_r times higher jets, and the
    # lower-left block whose entries in block column i are divisible by
    # t^(l+1-lambda_bar_i), i.e. lambda_bar_i free coefficients each
    e2 = 2 * (l + 1) * r * Nq + l * r * r + sum(2 * lb[i] * ns[i] * r for i in range(q))
    return h * _lpow(e2) * class_gl(r)


def group_class(m: int, l: int) -> PolyFrac:
    """[G_l] = [GL_m] L^(l m^2)."""
    return class_gl(m) * _lpow(l * m * m)


def orbit_class(m: int, lam, l: int) -> PolyFrac:
    """[C_{lam,l}] via orbit-stabilizer."""
    return group_class(m, l) / stabilizer_class(m, lam, l)


def orbit_class_closed_form(m: int, lam) -> PolyFrac:
    """[C_{lam,l}] L^(-l m(m-1)/2) for lam with all entries finite (independent of l)."""
    n = m // 2
    bl = blocks(lam)
    ns = [c for _, c in bl]
    den = class_gl(m - 2 * n) * _lpow(n - 2 * sum(x * x for x in ns))
    for x in ns:
        den = den * class_sp(x)
    return class_gl(m) / den * _lpow(-b_of_lambda(lam, m))


def point_count(c: PolyFrac, q: int) -> int:
    """Evaluate a class at L = q; the result must be an integer."""
    if q < 2:
        raise ValueError("q must be at least 2")
    v = Fraction(c(q))
    if v.denominator != 1:
        raise ValueError(f"not polynomial-count at q={q}: value {v}")
    return v.numerator


def euler(c: PolyFrac) -> Fraction:
    """Euler characteristic: value at L = 1 after cancelling powers of (L - 1)."""
    if c.is_zero():
        return Fraction(0)
    k, v = order_at_one(c)
    if k < 0:
        raise ValueError("pole at L=1")
    return Fraction(0) if k > 0 else v


def vp(c: PolyFrac) -> PolyFrac:
    """Virtual Poincare specialization L -> w^2 (result is a PolyFrac in w)."""
    return c.substitute_power(2)


__all__ = [
    "BlockData",
    "GrothClass",
    "class_csp",
    "class_gl",
    "class_sp",
    "euler",
    "group_class",
    "orbit_class",
    "orbit_class_closed_form",
    "point_count",
    "stabilizer_class",
    "vp",
]

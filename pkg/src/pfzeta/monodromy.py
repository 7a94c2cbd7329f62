"""Classes of alpha-images of orbits, Euler fiber terms and monodromy zeta shapes."""

from __future__ import annotations

from fractions import Fraction

from .exact import L, PolyFrac, order_at_one
from .groth import class_csp, class_gl, class_sp, orbit_class


class CycloProduct:
    """prod_c (1 - t^c)^e_c, stored as {c: e_c} with no zero exponents."""

    __slots__ = ("exponents",)

    def __init__(self, exponents: dict[int, int] | None = None):
        exps = {}
        for c, e in (exponents or {}).items():
            if c < 1:
                raise ValueError("cyclotomic index must be positive")
            if e:
                exps[c] = exps.get(c, 0) + e
        self.exponents = {c: e for c, e in sorted(exps.items()) if e}

    def __mul__(self, other: "CycloProduct") -> "CycloProduct":
        merged = dict(self.exponents)
        for c, e in other.exponents.items():
            merged[c] = merged.get(c, 0) + e
        return CycloProduct(merged)

    def __eq__(self, other):
        if not isinstance(other, CycloProduct):
            return NotImplemented
        return self.exponents == other.exponents

    def __hash__(self):
        return hash(tuple(self.exponents.items()))

    def pz_set(self) -> frozenset[Fraction]:
        """Zeros and poles as fractions j/c in [0, 1) (e^(2 pi i j/c))."""
        return frozenset(Fraction(j, c) for c in self.exponents for j in range(c))

    def __repr__(self):
        body = "*".join(f"(1 - t^{c})^{e}" for c, e in self.exponents.items())
        return f"CycloProduct({body or '1'})"


def _check(m: int, m0: int, i: int):
    n = m // 2
    if not 1 <= i <= m0 <= n:
        raise ValueError("need 1 <= i <= m0 <= floor(m/2)")


def alpha_image_class(m: int, m0: int, i: int, q_top: int) -> PolyFrac:
    """Class of the image of C_{lam,l} in the blow-up, lam in Omega^{i,m0}."""
    _check(m, m0, i)
    if not m0 <= q_top <= m // 2:
        raise ValueError("need m0 <= q_top <= floor(m/2)")
    k = q_top - i + 1
    middle = class_gl(2 * k) if q_top == m0 else class_csp(k)
    den = (
        class_sp(i - 1)
        * PolyFrac.monomial(2 * (i - 1) * (m - 2 * (i - 1)))
        * middle
        * PolyFrac.monomial(2 * k * (m - 2 * q_top))
        * class_gl(m - 2 * q_top)
    )
    return class_gl(m) / den


def omega_tuple(m: int, m0: int, i: int, q_top: int, s: int, l: int) -> tuple:
    """lam in Omega^{i,m0}_{n,l}: zeros, ones through q_top, twos through s, then l+1."""
    n = m // 2
    _check(m, m0, i)
    if not m0 <= q_top <= s <= n:
        raise ValueError("need m0 <= q_top <= s <= n")
    if s > q_top and l < 2:
        raise ValueError("entries equal to 2 need level l >= 2")
    if l < 1:
        raise ValueError("level must be at least 1")
    return (0,) * (i - 1) + (1,) * (q_top - i + 1) + (2,) * (s - q_top) + (l + 1,) * (n - s)


def fiber_quotient(m: int, m0: int, i: int, q_top: int, s: int | None = None, l: int = 1) -> PolyFrac:
    """[C_{lam,l}] / ([alpha(C_{lam,l})] (L - 1)) for lam = omega_tuple(...)."""
    if s is None:
        s = q_top
    lam = omega_tuple(m, m0, i, q_top, s, l)
    return orbit_class(m, lam, l) / (alpha_image_class(m, m0, i, q_top) * (L - 1))


def admissible(m: int, m0: int, i: int, q_top: int) -> str | None:
    """Which case (s = q_top) applies: 'q>m0' or 'q=m0=i', else None."""
    if q_top > m0 >= i:
        return "q>m0"
    if q_top == m0 == i:
        return "q=m0=i"
    return None


def euler_fiber_term(m: int, m0: int, i: int, q_top: int, l: int = 1) -> Fraction:
    """Euler characteristic of the fiber quotient in an admissible case; must be 1."""
    _check(m, m0, i)
    if admissible(m, m0, i, q_top) is None:
        raise ValueError(f"(m0, i, q) = ({m0}, {i}, {q_top}) is not an admissible case")
    k, v = order_at_one(fiber_quotient(m, m0, i, q_top, q_top, l))
    if k != 0:
        raise ArithmeticError(f"cancellation failure: order {k} at L=1")
    return v


def monodromy_zeta_shape(m: int, m0: int, i: int, k: int) -> CycloProduct:
    _check(m, m0, i)
    if k <= 0:
        raise ValueError("exponent k must be positive")
    return CycloProduct({m0 + 1 - i: k})

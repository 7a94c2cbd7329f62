"""Zeta functions of Pfaffian ideals and the conjecture checkers.

The virtual Poincare zeta function is kept in closed form as a sum of
products of geometric factors (:class:`ZetaExpr`), expanded to truncated
series on demand, and specialized to the topological zeta function by taking
the Euler limit term by term. Poles, candidate poles, eigenvalue sets and the
monodromy / holomorphy verdicts are exact rational arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Iterable, Sequence

from .exact import (
    ONE,
    ZERO,
    FactoredRational1,
    LaurentPoly,
    PolyFrac,
    TruncSeries,
    geom_expand,
    order_at_one,
)
from .groth import class_gl, class_sp, orbit_class
from .strata import alpha, compositions, enum_strata


def _check_pair(m: int, m0: int):
    if m < 2:
        raise ValueError("m must be at least 2")
    if not 1 <= m0 <= m // 2:
        raise ValueError("need 1 <= m0 <= floor(m/2)")


def y_u(m: int, u: Sequence[int]) -> PolyFrac:
    n = m // 2
    if sum(u) != n or any(x < 1 for x in u):
        raise ValueError(f"composition {tuple(u)} does not sum to n={n}")
    den = class_gl(m - 2 * n) * PolyFrac.monomial(n - 2 * sum(x * x for x in u))
    for x in u:
        den = den * class_sp(x)
    return class_gl(m) / den


def _exponents(m: int, u: Sequence[int], m0: int) -> tuple[list[int], list[int]]:
    """(e_i, c_i): tail sums of u_j (2m - 4U_j + 2u_j - 1) and of alpha_j(u)."""
    q = len(u)
    U, acc = [], 0
    for x in u:
        acc += x
        U.append(acc)
    w = [u[j] * (2 * m - 4 * U[j] + 2 * u[j] - 1) for j in range(q)]
    a = alpha(u, m0)
    e = [sum(w[i:]) for i in range(q)]
    c = [sum(a[i:]) for i in range(q)]
    return e, c


@dataclass(frozen=True)
class ZetaTerm:
    coefficient: PolyFrac
    shift: int
    # (b, c): the factor b T^c / (1 - b T^c); c = 0 gives the T-free b / (1 - b)
    factors: tuple[tuple[PolyFrac, int], ...]
    label: tuple = ()


@dataclass
class ZetaExpr:
    terms: list[ZetaTerm] = field(default_factory=list)

    def add_term(self, coefficient, shift: int, factors: Iterable[tuple], label=()):
        factors = tuple((PolyFrac(b) if not isinstance(b, PolyFrac) else b, int(c)) for b, c in factors)
        if any(c < 0 for _, c in factors):
            raise ValueError("negative T-exponent in a geometric factor")
        if shift + sum(c for _, c in factors) < 0:
            raise ValueError("term expands with negative T-exponents")
        self.terms.append(ZetaTerm(coefficient, shift, factors, tuple(label)))

    def expand(self, P: int) -> TruncSeries:
        """Truncated T-expansion through T^P."""
        total = TruncSeries(P)
        for t in self.terms:
            total = total + _expand_term(t, P)
        return total

    def coefficient(self, p: int) -> PolyFrac:
        return self.expand(p)[p]


def _expand_term(t: ZetaTerm, P: int) -> TruncSeries:
    span = P - t.shift
    const = t.coefficient
    series = TruncSeries(span, [ONE])
    for b, c in t.factors:
        if c == 0:
            const = const * b / (1 - b)
        else:
            series = series * geom_expand(b, c, span)
    for k in range(min(-t.shift, span + 1)):
        if not series[k].is_zero():
            raise ValueError("negative T-exponent survived the shift")
    coeffs = [series[k - t.shift] * const if 0 <= k - t.shift <= span else ZERO for k in range(P + 1)]
    return TruncSeries(P, coeffs)


def zvp_closed_form(m: int, m0: int) -> ZetaExpr:
    """Closed form of the VP zeta function, one term per composition of n."""
    _check_pair(m, m0)
    n = m // 2
    expr = ZetaExpr()
    for u in compositions(n):
        e, c = _exponents(m, u, m0)
        expr.add_term(
            y_u(m, u),
            -m0,
            [(PolyFrac.monomial(-ei), ci) for ei, ci in zip(e, c)],
            label=u,
        )
    return expr


def zvp_coefficient_direct(m: int, m0: int, p: int) -> PolyFrac:
    """Normalized class of the level-p contact locus as a sum over orbit strata."""
    _check_pair(m, m0)
    if p < 0:
        raise ValueError("p must be non-negative")
    n = m // 2
    total = ZERO
    for lam in enum_strata(n, m0, p, l=p):
        total = total + orbit_class(m, lam, p)
    return total * PolyFrac.monomial(-p * m * (m - 1) // 2)


# ---------------------------------------------------------------------------
# topological zeta function


def euler_limit(expr: ZetaExpr) -> list[FactoredRational1]:
    """Term-wise Euler specialization with T = L^(-s).

    Each factor (L - 1) b T^c / (1 - b T^c) with b = L^(-e) tends to
    1 / (c s + e); the remaining coefficient / (L - 1)^q has a finite limit
    that vanishes unless its order at L = 1 equals q. Returns the surviving
    terms.
    """
    out = []
    for t in expr.terms:
        q = len(t.factors)
        k, v = order_at_one(t.coefficient)
        if k < q:
            raise ValueError(f"term {t.label} has a pole at L=1 after specialization")
        if k > q:
            continue
        facs = []
        for b, c in t.factors:
            if not b.is_laurent() or len(b.num.coeffs) != 1 or b.num.coeffs.get(b.num.valuation) != 1:
                raise ValueError("Euler limit needs monomial factors L^(-e)")
            e = -b.num.valuation
            facs.append((c, e, -1))
        out.append(FactoredRational1(v, facs))
    return out


def ztop(m: int, m0: int) -> FactoredRational1:
    terms = euler_limit(zvp_closed_form(m, m0))
    if len(terms) != 1:
        raise ArithmeticError(f"expected a single surviving term, got {len(terms)}")
    return terms[0]


def ztop_constants(m: int) -> dict[str, Fraction]:
    """Overall constant of Z^top: computed, its closed form, and the variant m!/2^(2n)."""
    n = m // 2
    k, v = order_at_one(y_u(m, (1,) * n))
    if k != n:
        raise ArithmeticError("unexpected order of Y_1 at L=1")
    return {
        "computed": Fraction(v),
        "closed_form": Fraction(factorial(m), factorial(m - 2 * n) * 2**n),
        "over_4_pow_n": Fraction(factorial(m), 2 ** (2 * n)),
    }


def ztop_from_resolution(pieces: Iterable[tuple[int, Sequence[tuple[int, int]]]]) -> PolyFrac:
    """sum_I chi(E_I) prod_{i in I} 1/(N_i s + nu_i), as a PolyFrac in s."""
    total = ZERO
    for chi, data in pieces:
        term = PolyFrac(chi)
        for N, nu in data:
            term = term / PolyFrac(LaurentPoly({1: N, 0: nu}))
        total = total + term
    return total


def zmot_from_resolution(pieces: Iterable[tuple[PolyFrac, Sequence[tuple[int, int]]]], P: int) -> TruncSeries:
    """sum_I [E_I] prod_{i in I} (L-1) L^(-nu_i) T^N_i / (1 - L^(-nu_i) T^N_i), mod T^(P+1)."""
    total = TruncSeries(P)
    lm1 = PolyFrac(LaurentPoly({1: 1, 0: -1}))
    for cls, data in pieces:
        term = TruncSeries(P, [cls])
        for N, nu in data:
            term = term * geom_expand(PolyFrac.monomial(-nu), N, P) * lm1
        total = total + term
    return total


# ---------------------------------------------------------------------------
# poles, eigenvalues, conjectures


def resolution_data(m: int, m0: int) -> list[tuple[int, int]]:
    """(N_i, nu_i) of the canonical log resolution, i = 1..m0."""
    _check_pair(m, m0)
    return [(m0 - i + 1, (m - 2 * i + 2) * (m - 2 * i + 1) // 2) for i in range(1, m0 + 1)]


def resolution_poles(m: int, m0: int) -> set[Fraction]:
    _check_pair(m, m0)
    return {Fraction(-(m - 2 * i + 2) * (m - 2 * i + 1), 2 * (m0 - i + 1)) for i in range(1, m0 + 1)}


def gtz_candidates(m: int, m0: int, d0: int) -> set[Fraction]:
    """Candidate poles of the generalized topological zeta function for d0."""
    if d0 < 1:
        raise ValueError("d0 must be positive")
    return {Fraction(-nu, N) for N, nu in resolution_data(m, m0) if N % d0 == 0}


def eigenvalues(m: int, m0: int) -> frozenset[Fraction]:
    """Known Verdier monodromy eigenvalues, encoded as j/d in [0, 1)."""
    _check_pair(m, m0)
    if m0 == m // 2:
        return frozenset({Fraction(0)})
    out = set()
    for k in range(1, m0 + 1):
        d = m0 - k + 1
        for j in range(m0 - k + 1):
            out.add(Fraction(j, d) % 1)
    return frozenset(out)


def _orders(eigs: Iterable[Fraction]) -> set[int]:
    return {x.denominator for x in eigs}


def check_mc(m: int, m0: int) -> dict:
    poles = sorted(resolution_poles(m, m0))
    eigs = eigenvalues(m, m0)
    images = [p % 1 for p in poles]
    ok = all(x in eigs for x in images)
    if m0 == m // 2:
        ok = ok and all(p.denominator == 1 for p in poles)
    return {
        "m": m,
        "m0": m0,
        "poles": poles,
        "images": images,
        "eigenvalues": sorted(eigs),
        "integral_branch": m0 == m // 2,
        "verdict": ok,
    }


def check_hc(m: int, m0: int, d0: int) -> dict:
    eigs = eigenvalues(m, m0)
    orders = sorted(_orders(eigs))
    hyp = all(o % d0 != 0 for o in orders)
    cands = sorted(gtz_candidates(m, m0, d0))
    if not cands:
        verdict = "holomorphic"
    elif hyp:
        verdict = "inconclusive"
    else:
        verdict = "not-applicable"
    return {
        "m": m,
        "m0": m0,
        "d0": d0,
        "eigenvalue_orders": orders,
        "hypothesis_holds": hyp,
        "candidates": cands,
        "verdict": verdict,
    }

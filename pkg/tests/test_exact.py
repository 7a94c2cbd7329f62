from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pfzeta.exact import (
    L,
    ONE,
    ZERO,
    FactoredRational1,
    LaurentPoly,
    PolyFrac,
    TruncSeries,
    geom_expand,
    order_at_one,
)

small_int = st.integers(-4, 4)


@st.composite
def laurent(draw, nonzero=False):
    lo = draw(st.integers(-3, 3))
    cs = draw(st.lists(small_int, min_size=1, max_size=4))
    p = LaurentPoly({lo + i: c for i, c in enumerate(cs)})
    if nonzero and p.is_zero():
        p = LaurentPoly({lo: 1})
    return p


@st.composite
def fracs(draw, nonzero=False):
    num = draw(laurent(nonzero=nonzero))
    den = draw(laurent(nonzero=True))
    return PolyFrac(num, den)


def test_laurent_basic():
    p = LaurentPoly({-1: 2, 3: 1})
    assert p.valuation == -1 and p.degree == 3
    assert p.coeffs == {-1: 2, 3: 1}
    assert (p * p).coeffs == {-2: 4, 2: 4, 6: 1}
    assert LaurentPoly({2: 0}).is_zero()
    assert p(2) == Fraction(2, 2) + 8


def test_polyfrac_normal_form_unique():
    a = (L**2 - 1) / (L - 1)
    assert a == L + 1
    b = (L**3 - 1) / (L - 1)
    assert b == L**2 + L + 1
    assert PolyFrac(LaurentPoly({0: 2}), LaurentPoly({0: 4})) == PolyFrac(Fraction(1, 2))
    assert hash(a) == hash(L + 1)


def test_polyfrac_zero_denominator():
    with pytest.raises(ZeroDivisionError):
        PolyFrac(1, 0)
    with pytest.raises(ZeroDivisionError):
        ONE / ZERO


@settings(max_examples=60, deadline=None)
@given(fracs(), fracs(), fracs())
def test_field_identities(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a - a == ZERO
    assert (a * b) * c == a * (b * c)


@settings(max_examples=60, deadline=None)
@given(fracs(nonzero=True))
def test_inverse(a):
    assert a * a.inverse() == ONE
    assert a / a == ONE


@settings(max_examples=60, deadline=None)
@given(fracs(nonzero=True), st.integers(0, 3))
def test_order_at_one_increments(f, extra):
    k, v = order_at_one(f)
    k2, v2 = order_at_one(f * (L - 1) ** extra)
    assert k2 == k + extra and v2 == v


def test_order_at_one_examples():
    assert order_at_one(L**2 - 1) == (1, 2)
    assert order_at_one((L**3 - 1) / (L - 1)) == (0, 3)
    assert order_at_one(L**5) == (0, 1)
    assert order_at_one(1 / (L - 1) ** 2) == (-2, 1)
    with pytest.raises(ValueError):
        order_at_one(ZERO)


def test_geom_expand_examples():
    T = geom_expand(ONE, 1, 3)
    assert T.coeffs == (ZERO, ONE, ONE, ONE)
    s = geom_expand(L**-2, 2, 5)
    assert s.coeffs == (ZERO, ZERO, L**-2, ZERO, L**-4, ZERO)
    s = geom_expand(L**-3, 1, 2)
    assert s.coeffs == (ZERO, L**-3, L**-6)
    with pytest.raises(ValueError):
        geom_expand(ONE, 0, 3)


@settings(max_examples=30, deadline=None)
@given(fracs(), st.integers(1, 3), st.integers(0, 6))
def test_geom_expand_inverts_one_minus(b, c, P):
    g = geom_expand(b, c, P)
    one_minus = TruncSeries(P, [ONE] + [ZERO] * (c - 1) + [-b])
    assert one_minus * (TruncSeries(P, [ONE]) + g) == TruncSeries(P, [ONE])


def test_substitute_power_and_eval():
    f = (L**2 - 1) / L
    assert f.substitute_power(2) == (L**4 - 1) / L**2
    assert f(3) == Fraction(8, 3)
    with pytest.raises(ZeroDivisionError):
        (1 / (L - 1))(1)


def test_factored_rational():
    f = FactoredRational1(3, [(2, 6, -1), (1, 1, -1)])
    assert f.constant == Fraction(3, 2)
    assert f.factors == ((1, 1, -1), (1, 3, -1))
    assert f.poles() == {Fraction(-1), Fraction(-3)}
    assert f(0) == Fraction(1, 2)
    g = FactoredRational1(5, [(0, 2, -1)])
    assert g.constant == Fraction(5, 2) and g.factors == ()
    assert (f * g).constant == Fraction(15, 4)
    assert f.to_polyfrac()(1) == f(1)
    assert f.format() == "3/2/((s + 1)*(s + 3))"

"""Exact univariate arithmetic.

Laurent polynomials in one abstract symbol, normalized quotients of them,
power series in a second symbol ``T`` truncated at a caller-supplied order,
and factored rational functions in ``s`` built from linear factors.

Coefficients are Python ``int`` wherever possible and ``Fraction`` otherwise;
nothing here ever rounds.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Sequence, Union

Number = Union[int, Fraction]


def _norm(c: Number) -> Number:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


# ---------------------------------------------------------------------------
# dense helpers: lists of coefficients, lowest degree first, no trailing zeros


def _trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def _add(p: Sequence, q: Sequence) -> list:
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for i, c in enumerate(q):
        out[i] += c
    return _trim([_norm(c) for c in out])


def _neg(p: Sequence) -> list:
    return [-c for c in p]


def _mul(p: Sequence, q: Sequence) -> list:
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return _trim([_norm(c) for c in out])


def _divmod(p: Sequence, q: Sequence) -> tuple[list, list]:
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(p)
    dq = len(q) - 1
    lead = q[-1]
    if len(r) <= dq:
        return [], _trim(r)
    quo = [0] * (len(r) - dq)
    for k in range(len(r) - 1, dq - 1, -1):
        c = r[k]
        if c == 0:
            continue
        if lead == 1:
            f = c
        elif lead == -1:
            f = -c
        else:
            f = _norm(Fraction(c) / lead)
        quo[k - dq] = f
        base = k - dq
        for j in range(dq + 1):
            r[base + j] -= f * q[j]
    return _trim([_norm(c) for c in quo]), _trim([_norm(c) for c in r[:dq]])


def _content(p: Sequence) -> Fraction:
    """Positive rational content: p / content has coprime integer coefficients."""
    num = 0
    den = 1
    for c in p:
        c = Fraction(c)
        num = gcd(num, c.numerator)
        den = den * c.denominator // gcd(den, c.denominator)
    return Fraction(num, den)


def _primitive(p: Sequence) -> list:
    if not p:
        return []
    c = _content(p)
    if p[-1] < 0:
        c = -c
    return [_norm(Fraction(x) / c) for x in p]


def _prem(a: list, b: list) -> list:
    """Pseudo-remainder of integer polynomials."""
    r = list(a)
    db = len(b) - 1
    lead = b[-1]
    while len(r) - 1 >= db and r:
        c = r[-1]
        shift = len(r) - 1 - db
        r = [x * lead for x in r]
        for j in range(db + 1):
            r[shift + j] -= c * b[j]
        _trim(r)
    return r


def _gcd(p: Sequence, q: Sequence) -> list:
    """Primitive gcd over Q (returned with integer coefficients, positive lead)."""
    a = _primitive(p)
    b = _primitive(q)
    if not a:
        return b
    if not b:
        return a
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _prem(a, b)
        a, b = b, _primitive(r)
    return _primitive(a)


def _eval(p: Sequence, x: Number) -> Number:
    acc: Number = 0
    for c in reversed(p):
        acc = acc * x + c
    return _norm(acc) if isinstance(acc, Fraction) else acc


def _div_x_minus_one(p: Sequence) -> list:
    """Exact quotient of p by (x - 1); p(1) must vanish."""
    n = len(p) - 1
    out = [0] * n
    acc = 0
    for k in range(n, 0, -1):
        acc += p[k]
        out[k - 1] = acc
    return _trim(out)


# ---------------------------------------------------------------------------


class LaurentPoly:
    """Finite sum of c_k x^k with k in Z and exact coefficients.

    Stored densely as a valuation plus a coefficient tuple whose first and
    last entries are non-zero; ``coeffs`` exposes the sparse view.
    """

    __slots__ = ("_val", "_c")

    def __init__(self, coeffs: Mapping[int, Number] | None = None):
        coeffs = {k: _norm(v) for k, v in (coeffs or {}).items() if v != 0}
        if not coeffs:
            self._val, self._c = 0, ()
            return
        lo, hi = min(coeffs), max(coeffs)
        self._val = lo
        self._c = tuple(coeffs.get(k, 0) for k in range(lo, hi + 1))

    @classmethod
    def _dense(cls, val: int, c: Sequence) -> "LaurentPoly":
        c = list(c)
        _trim(c)
        start = 0
        while start < len(c) and c[start] == 0:
            start += 1
        obj = cls.__new__(cls)
        if start == len(c):
            obj._val, obj._c = 0, ()
        else:
            obj._val, obj._c = val + start, tuple(c[start:])
        return obj

    @classmethod
    def monomial(cls, k: int, c: Number = 1) -> "LaurentPoly":
        return cls({k: c})

    @property
    def coeffs(self) -> dict[int, Number]:
        return {self._val + i: c for i, c in enumerate(self._c) if c != 0}

    @property
    def valuation(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no valuation")
        return self._val

    @property
    def degree(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no degree")
        return self._val + len(self._c) - 1

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self) -> bool:
        return bool(self._c)

    def _aligned(self, other: "LaurentPoly") -> tuple[int, list, list]:
        if not self._c:
            return other._val, [], list(other._c)
        if not other._c:
            return self._val, list(self._c), []
        v = min(self._val, other._val)
        a = [0] * (self._val - v) + list(self._c)
        b = [0] * (other._val - v) + list(other._c)
        return v, a, b

    def __add__(self, other):
        other = _as_laurent(other)
        if other is NotImplemented:
            return other
        v, a, b = self._aligned(other)
        return LaurentPoly._dense(v, _add(a, b))

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._dense(self._val, _neg(self._c))

    def __sub__(self, other):
        other = _as_laurent(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _as_laurent(other)
        if other is NotImplemented:
            return other
        return LaurentPoly._dense(self._val + other._val, _mul(self._c, other._c))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            if len(self._c) != 1:
                raise ValueError("only monomials have Laurent inverses")
            return LaurentPoly._dense(self._val * e, [Fraction(1) / self._c[0] ** (-e)])
        out = LaurentPoly({0: 1})
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        other = _as_laurent(other)
        if other is NotImplemented:
            return other
        return self._val == other._val and self._c == other._c

    def __hash__(self):
        return hash((self._val, self._c))

    def __call__(self, x: Number) -> Number:
        if not self._c:
            return 0
        base = _eval(self._c, x)
        if self._val >= 0:
            return _norm(base * Fraction(x) ** self._val) if isinstance(x, Fraction) else base * x**self._val
        return _norm(Fraction(base) / Fraction(x) ** (-self._val))

    def substitute_power(self, k: int) -> "LaurentPoly":
        """x -> x**k."""
        return LaurentPoly({e * k: c for e, c in self.coeffs.items()})

    def format(self, symbol: str = "L") -> str:
        if not self._c:
            return "0"
        parts = []
        for e in sorted(self.coeffs, reverse=True):
            c = self.coeffs[e]
            sign = "-" if c < 0 else "+"
            a = -c if c < 0 else c
            if e == 0:
                body = str(a)
            else:
                mono = symbol if e == 1 else f"{symbol}^{e}" if e > 0 else f"{symbol}^({e})"
                body = mono if a == 1 else f"{a}*{mono}"
            parts.append((sign, body))
        head = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        return head + "".join(f" {s} {b}" for s, b in parts[1:])

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"LaurentPoly({self.coeffs!r})"


def _as_laurent(x):
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return LaurentPoly({0: x})
    return NotImplemented


class PolyFrac:
    """Quotient num/den of Laurent polynomials in normal form.

    Normal form: den is a polynomial with non-zero constant term, primitive
    over Z with positive leading coefficient; num and den are coprime over Q.
    Two equal fractions therefore have identical (num, den).
    """

    __slots__ = ("num", "den")

    def __init__(self, num=0, den=1):
        num = _as_laurent(num)
        den = _as_laurent(den)
        if num is NotImplemented or den is NotImplemented:
            raise TypeError("PolyFrac expects LaurentPoly, int or Fraction parts")
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            self.num, self.den = LaurentPoly(), LaurentPoly({0: 1})
            return
        shift = num._val - den._val
        p, q = list(num._c), list(den._c)
        if len(q) > 1:
            quo, rem = _divmod(p, q)
            if not rem:
                p, q = quo, [1]
            else:
                g = _gcd(p, q)
                if len(g) > 1:
                    p = _divmod(p, g)[0]
                    q = _divmod(q, g)[0]
        c = _content(q)
        if q[-1] < 0:
            c = -c
        if c != 1:
            q = [_norm(Fraction(x) / c) for x in q]
            p = [_norm(Fraction(x) / c) for x in p]
        self.num = LaurentPoly._dense(shift, p)
        self.den = LaurentPoly._dense(0, q)

    @classmethod
    def _raw(cls, num: LaurentPoly, den: LaurentPoly) -> "PolyFrac":
        obj = cls.__new__(cls)
        obj.num, obj.den = num, den
        return obj

    @classmethod
    def monomial(cls, k: int, c: Number = 1) -> "PolyFrac":
        return cls._raw(LaurentPoly({k: c}), LaurentPoly({0: 1}))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_laurent(self) -> bool:
        return len(self.den._c) == 1

    def _den_is_one(self) -> bool:
        return self.den._c == (1,)

    def __add__(self, other):
        other = _as_frac(other)
        if other is NotImplemented:
            return other
        if self._den_is_one() and other._den_is_one():
            return PolyFrac._raw(self.num + other.num, self.den)
        if self.den == other.den:
            return PolyFrac(self.num + other.num, self.den)
        return PolyFrac(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return PolyFrac._raw(-self.num, self.den)

    def __sub__(self, other):
        other = _as_frac(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _as_frac(other)
        if other is NotImplemented:
            return other
        if self._den_is_one() and other._den_is_one():
            return PolyFrac._raw(self.num * other.num, self.den)
        return PolyFrac(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "PolyFrac":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero fraction")
        return PolyFrac(self.den, self.num)

    def __truediv__(self, other):
        other = _as_frac(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            raise ZeroDivisionError("division by zero fraction")
        return PolyFrac(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = _as_frac(other)
        if other is NotImplemented:
            return other
        return other / self

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = ONE
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        other = _as_frac(other)
        if other is NotImplemented:
            return other
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __call__(self, x: Number) -> Number:
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError(f"denominator vanishes at {x}")
        return _norm(Fraction(self.num(x)) / d)

    def substitute_power(self, k: int) -> "PolyFrac":
        return PolyFrac(self.num.substitute_power(k), self.den.substitute_power(k))

    def format(self, symbol: str = "L") -> str:
        if self._den_is_one():
            return self.num.format(symbol)
        n = self.num.format(symbol)
        if len(self.num.coeffs) > 1:
            n = f"({n})"
        return f"{n}/({self.den.format(symbol)})"

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"PolyFrac({self.format()!r})"


def _as_frac(x):
    if isinstance(x, PolyFrac):
        return x
    if isinstance(x, (int, Fraction)):
        return PolyFrac._raw(LaurentPoly({0: x}), LaurentPoly({0: 1}))
    if isinstance(x, LaurentPoly):
        return PolyFrac._raw(x, LaurentPoly({0: 1}))
    return NotImplemented


ONE = PolyFrac._raw(LaurentPoly({0: 1}), LaurentPoly({0: 1}))
ZERO = PolyFrac._raw(LaurentPoly(), LaurentPoly({0: 1}))
L = PolyFrac.monomial(1)


def order_at_one(f: PolyFrac) -> tuple[int, Fraction]:
    """Return (k, v) with f = (x - 1)^k g and g(1) = v != 0."""
    if f.is_zero():
        raise ValueError("zero fraction")
    num, den = list(f.num._c), list(f.den._c)
    k = 0
    while _eval(num, 1) == 0:
        num = _div_x_minus_one(num)
        k += 1
    while _eval(den, 1) == 0:
        den = _div_x_minus_one(den)
        k -= 1
    return k, Fraction(_eval(num, 1)) / _eval(den, 1)


# ---------------------------------------------------------------------------


class TruncSeries:
    """Power series sum_k a_k T^k with PolyFrac coefficients, mod T^(order+1)."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs: Iterable = ()):
        if order < 0:
            raise ValueError("truncation order must be non-negative")
        cs = [_as_frac(c) for c in coeffs][: order + 1]
        cs += [ZERO] * (order + 1 - len(cs))
        self.order = order
        self.coeffs = tuple(cs)

    def __getitem__(self, k: int) -> PolyFrac:
        return self.coeffs[k] if 0 <= k <= self.order else ZERO

    def _check(self, other: "TruncSeries"):
        if self.order != other.order:
            raise ValueError("truncation orders differ")

    def __add__(self, other):
        if not isinstance(other, TruncSeries):
            other = TruncSeries(self.order, [other])
        self._check(other)
        return TruncSeries(self.order, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries(self.order, [-a for a in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, TruncSeries):
            other = _as_frac(other)
            return TruncSeries(self.order, [a * other for a in self.coeffs])
        self._check(other)
        P = self.order
        out = [ZERO] * (P + 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j in range(P + 1 - i):
                b = other.coeffs[j]
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return TruncSeries(P, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __repr__(self):
        terms = [f"({c})*T^{k}" for k, c in enumerate(self.coeffs) if not c.is_zero()]
        return "TruncSeries(" + (" + ".join(terms) or "0") + f", order={self.order})"


def geom_expand(b, c: int, P: int) -> TruncSeries:
    """Expansion of b T^c / (1 - b T^c) modulo T^(P+1)."""
    if c < 1:
        raise ValueError("T-exponent of a geometric factor must be >= 1")
    b = _as_frac(b)
    out = [ZERO] * (P + 1)
    power = b
    k = c
    while k <= P:
        out[k] = power
        power = power * b
        k += c
    return TruncSeries(P, out)


# ---------------------------------------------------------------------------


class FactoredRational1:
    """constant * prod (a s + b)^e with integer a > 0, gcd(a, b) = 1."""

    __slots__ = ("constant", "factors")

    def __init__(self, constant: Number = 1, factors: Iterable[tuple[int, int, int]] = ()):
        const = Fraction(constant)
        acc: dict[tuple[int, int], int] = {}
        for a, b, e in factors:
            if e == 0:
                continue
            if a == 0:
                if b == 0:
                    if e < 0:
                        raise ZeroDivisionError("zero factor in denominator")
                    const = Fraction(0)
                    continue
                const *= Fraction(b) ** e
                continue
            g = gcd(a, b)
            if a < 0:
                g = -g
            const *= Fraction(g) ** e
            key = (a // g, b // g)
            acc[key] = acc.get(key, 0) + e
        self.constant = const
        self.factors = tuple(sorted((a, b, e) for (a, b), e in acc.items() if e != 0))

    def poles(self) -> set[Fraction]:
        if self.constant == 0:
            return set()
        return {Fraction(-b, a) for a, b, e in self.factors if e < 0}

    def zeros(self) -> set[Fraction]:
        if self.constant == 0:
            return set()
        return {Fraction(-b, a) for a, b, e in self.factors if e > 0}

    def __mul__(self, other):
        if isinstance(other, FactoredRational1):
            return FactoredRational1(self.constant * other.constant, self.factors + other.factors)
        if isinstance(other, (int, Fraction)):
            return FactoredRational1(self.constant * other, self.factors)
        return NotImplemented

    __rmul__ = __mul__

    def __call__(self, s: Number) -> Fraction:
        val = Fraction(self.constant)
        for a, b, e in self.factors:
            val *= Fraction(a * Fraction(s) + b) ** e
        return val

    def to_polyfrac(self) -> PolyFrac:
        """The same function as a PolyFrac in the symbol s."""
        out = PolyFrac(self.constant)
        for a, b, e in self.factors:
            out = out * PolyFrac(LaurentPoly({1: a, 0: b})) ** e
        return out

    def __eq__(self, other):
        if not isinstance(other, FactoredRational1):
            return NotImplemented
        return self.constant == other.constant and self.factors == other.factors

    def __hash__(self):
        return hash((self.constant, self.factors))

    def format(self, symbol: str = "s") -> str:
        num, den = [], []
        for a, b, e in self.factors:
            lin = (f"{a}*{symbol}" if a != 1 else symbol) + (f" + {b}" if b > 0 else f" - {-b}" if b < 0 else "")
            body = f"({lin})" + (f"^{abs(e)}" if abs(e) != 1 else "")
            (num if e > 0 else den).append(body)
        top = "*".join([str(self.constant)] + num) if num else str(self.constant)
        return top + ("/(" + "*".join(den) + ")" if den else "")

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"FactoredRational1({self.format()!r})"

"""Exact linear algebra of skew-symmetric matrix jets.

Matrices live over a truncated ring K[t]/(t^(l+1)) with K the rationals or a
finite field. Two interchangeable ring backends share one interface:
``TruncRing`` stores elements as coefficient tuples, ``TableRing`` encodes
them as ints (digit k in base q is the t^k coefficient) and answers every
operation from precomputed tables. All algorithms below (Pfaffians, Smith-type
invariant extraction, determinants) are written once against that interface.
"""

from __future__ import annotations

import random
import re
from functools import lru_cache
from itertools import combinations
from typing import Sequence

import numpy as np

from .fields import QQ, FiniteField, Rationals, field_from_name
from .strata import TOP, validate_lambda


# ---------------------------------------------------------------------------
# rings


class TruncRing:
    """K[t]/(t^(l+1)) with elements stored as (l+1)-tuples of field elements."""

    def __init__(self, field, l: int):
        if l < 0:
            raise ValueError("level must be non-negative")
        self.field, self.l = field, l
        F = field
        self.zero = (F.zero,) * (l + 1)
        self.one = (F.one,) + (F.zero,) * l

    def from_coeffs(self, coeffs: Sequence) -> tuple:
        F = self.field
        cs = [F.from_int(c) if isinstance(c, int) else c for c in coeffs][: self.l + 1]
        return tuple(cs) + (F.zero,) * (self.l + 1 - len(cs))

    def to_coeffs(self, x) -> tuple:
        return x

    def add(self, a, b):
        f = self.field.add
        return tuple(f(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        f = self.field.sub
        return tuple(f(x, y) for x, y in zip(a, b))

    def neg(self, a):
        f = self.field.neg
        return tuple(f(x) for x in a)

    def mul(self, a, b):
        F = self.field
        n = self.l + 1
        out = [F.zero] * n
        for i, x in enumerate(a):
            if x == F.zero:
                continue
            for j in range(n - i):
                y = b[j]
                if y != F.zero:
                    out[i + j] = F.add(out[i + j], F.mul(x, y))
        return tuple(out)

    def order(self, a) -> int:
        z = self.field.zero
        for k, x in enumerate(a):
            if x != z:
                return k
        return self.l + 1

    def shift_div(self, a, o: int):
        """a / t^o for ord(a) >= o, padded with zeros (any lift works)."""
        return tuple(a[o:]) + (self.field.zero,) * o

    def inv(self, u):
        F = self.field
        if u[0] == F.zero:
            raise ZeroDivisionError("not a unit")
        u0 = F.inv(u[0])
        out = [u0]
        for k in range(1, self.l + 1):
            acc = F.zero
            for j in range(1, k + 1):
                acc = F.add(acc, F.mul(u[j], out[k - j]))
            out.append(F.neg(F.mul(acc, u0)))
        return tuple(out)

    def t_power(self, k) -> tuple:
        if k > self.l:
            return self.zero
        return self.from_coeffs([0] * k + [1])

    def elements(self):
        from itertools import product

        return [tuple(c) for c in product(self.field.elements(), repeat=self.l + 1)]

    def random(self, rng: random.Random):
        return tuple(self.field.random(rng) for _ in range(self.l + 1))


class TableRing:
    """F_q[t]/(t^(l+1)) with int-encoded elements and table arithmetic."""

    def __init__(self, field: FiniteField, l: int):
        base = TruncRing(field, l)
        self.field, self.l = field, l
        q = field.q
        self.size = S = q ** (l + 1)
        elems = [self._decode(x, q, l) for x in range(S)]
        index = {e: i for i, e in enumerate(elems)}
        self.zero, self.one = 0, 1
        self._elems = elems
        if field.degree == 1:
            self.add_t, self.sub_t, self.mul_t = self._prime_tables(q, l)
        else:
            self.add_t = [index[base.add(a, b)] for a in elems for b in elems]
            self.sub_t = [index[base.sub(a, b)] for a in elems for b in elems]
            self.mul_t = [index[base.mul(a, b)] for a in elems for b in elems]
        self.neg_t = [index[base.neg(a)] for a in elems]
        self.order_t = [base.order(a) for a in elems]
        self.shift_t = [[index[base.shift_div(a, o)] for a in elems] for o in range(l + 2)]
        self.inv_t = [index[base.inv(a)] if a[0] else -1 for a in elems]
        self._index = index

    @staticmethod
    def _prime_tables(p: int, l: int) -> tuple[list, list, list]:
        """Flat add/sub/mul tables for F_p[t]/(t^(l+1)), vectorized over digit arrays."""
        S = p ** (l + 1)
        weights = p ** np.arange(l + 1)
        digits = (np.arange(S)[:, None] // weights) % p
        a, b = digits[:, None, :], digits[None, :, :]
        add = ((a + b) % p) @ weights
        sub = ((a - b) % p) @ weights
        prod = np.zeros((S, S, l + 1), dtype=np.int64)
        for i in range(l + 1):
            for j in range(l + 1 - i):
                prod[:, :, i + j] += digits[:, None, i] * digits[None, :, j]
        mul = (prod % p) @ weights
        return add.ravel().tolist(), sub.ravel().tolist(), mul.ravel().tolist()

    @staticmethod
    def _decode(x: int, q: int, l: int) -> tuple:
        out = []
        for _ in range(l + 1):
            out.append(x % q)
            x //= q
        return tuple(out)

    def from_coeffs(self, coeffs: Sequence) -> int:
        F = self.field
        cs = [F.from_int(c) for c in coeffs][: self.l + 1]
        cs += [0] * (self.l + 1 - len(cs))
        return self._index[tuple(cs)]

    def to_coeffs(self, x: int) -> tuple:
        return self._elems[x]

    def add(self, a, b):
        return self.add_t[a * self.size + b]

    def sub(self, a, b):
        return self.sub_t[a * self.size + b]

    def neg(self, a):
        return self.neg_t[a]

    def mul(self, a, b):
        return self.mul_t[a * self.size + b]

    def order(self, a) -> int:
        return self.order_t[a]

    def shift_div(self, a, o: int):
        return self.shift_t[o][a]

    def inv(self, u):
        r = self.inv_t[u]
        if r < 0:
            raise ZeroDivisionError("not a unit")
        return r

    def t_power(self, k) -> int:
        return 0 if k > self.l else self.field.q**k

    def elements(self):
        return range(self.size)

    def random(self, rng: random.Random) -> int:
        return rng.randrange(self.size)


TABLE_LIMIT = 729


@lru_cache(maxsize=None)
def ring_for(field, l: int):
    """The ring backend for K[t]/(t^(l+1)): tables for small finite rings."""
    if isinstance(field, FiniteField) and field.q ** (l + 1) <= TABLE_LIMIT:
        return TableRing(field, l)
    return TruncRing(field, l)


# ---------------------------------------------------------------------------
# user-facing element and matrix types


class TruncPoly:
    """An element c_0 + c_1 t + ... + c_l t^l of K[t]/(t^(l+1))."""

    __slots__ = ("ring", "raw")

    def __init__(self, coeffs: Sequence = (), l: int = 0, field=QQ, *, ring=None, raw=None):
        self.ring = ring if ring is not None else ring_for(field, l)
        self.raw = raw if raw is not None else self.ring.from_coeffs(list(coeffs))

    @property
    def l(self) -> int:
        return self.ring.l

    @property
    def field(self):
        return self.ring.field

    @property
    def coeffs(self) -> tuple:
        return tuple(self.ring.to_coeffs(self.raw))

    def order(self) -> int:
        """Least k with c_k != 0, or l + 1 for zero."""
        return self.ring.order(self.raw)

    def is_zero(self) -> bool:
        return self.order() > self.l

    def _wrap(self, raw):
        return TruncPoly(ring=self.ring, raw=raw)

    def _coerce(self, other):
        if isinstance(other, TruncPoly):
            if other.ring is not self.ring:
                raise ValueError("elements of different rings")
            return other.raw
        if isinstance(other, int):
            return self.ring.from_coeffs([other])
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.ring.add(self.raw, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.ring.sub(self.raw, o))

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.ring.sub(o, self.raw))

    def __neg__(self):
        return self._wrap(self.ring.neg(self.raw))

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.ring.mul(self.raw, o))

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int):
            other = self._coerce(other)
            return self.raw == other
        if not isinstance(other, TruncPoly):
            return NotImplemented
        return self.ring is other.ring and self.raw == other.raw

    def __hash__(self):
        return hash((self.l, self.coeffs))

    def format(self) -> str:
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            cs = str(c)
            if mono and cs == "1":
                cs = ""
            elif mono and cs == "-1":
                cs = "-"
            parts.append(cs + mono)
        return "+".join(parts).replace("+-", "-") or "0"

    def __repr__(self):
        return f"TruncPoly({self.format()} mod t^{self.l + 1} over {self.field})"


class JetSkewMatrix:
    """Alternating m x m matrix over K[t]/(t^(l+1)); only i < j entries are stored."""

    __slots__ = ("m", "ring", "upper")

    def __init__(self, m: int, ring, upper: dict | None = None):
        if m < 0:
            raise ValueError("size must be non-negative")
        self.m, self.ring = m, ring
        self.upper = {}
        for (i, j), x in (upper or {}).items():
            if not 0 <= i < j < m:
                raise ValueError(f"entry ({i}, {j}) is not strictly above the diagonal")
            if ring.order(x) <= ring.l:
                self.upper[(i, j)] = x

    @classmethod
    def from_entries(cls, m: int, l: int, field, entries: dict) -> "JetSkewMatrix":
        """``entries`` maps 0-based (i, j), i < j, to coefficient lists or TruncPolys."""
        ring = ring_for(field, l)
        up = {}
        for (i, j), v in entries.items():
            raw = v.raw if isinstance(v, TruncPoly) else ring.from_coeffs(list(v))
            if i > j:
                i, j, raw = j, i, ring.neg(raw)
            up[(i, j)] = raw
        return cls(m, ring, up)

    @property
    def l(self) -> int:
        return self.ring.l

    @property
    def field(self):
        return self.ring.field

    def raw(self, i: int, j: int):
        if i == j:
            return self.ring.zero
        if i < j:
            return self.upper.get((i, j), self.ring.zero)
        return self.ring.neg(self.upper.get((j, i), self.ring.zero))

    def entry(self, i: int, j: int) -> TruncPoly:
        return TruncPoly(ring=self.ring, raw=self.raw(i, j))

    def rows(self) -> list[list]:
        return [[self.raw(i, j) for j in range(self.m)] for i in range(self.m)]

    def submatrix(self, idx: Sequence[int]) -> "JetSkewMatrix":
        pos = {v: k for k, v in enumerate(idx)}
        up = {}
        for (i, j), x in self.upper.items():
            if i in pos and j in pos:
                a, b = pos[i], pos[j]
                up[(a, b) if a < b else (b, a)] = x if a < b else self.ring.neg(x)
        return JetSkewMatrix(len(idx), self.ring, up)

    def congruent(self, P: Sequence[Sequence]) -> "JetSkewMatrix":
        """P A P^T, computed from the upper triangle so it stays alternating in char 2."""
        R = self.ring
        m = self.m
        up = {}
        for a in range(m):
            for b in range(a + 1, m):
                acc = R.zero
                for (i, j), x in self.upper.items():
                    d = R.sub(R.mul(P[a][i], P[b][j]), R.mul(P[a][j], P[b][i]))
                    acc = R.add(acc, R.mul(x, d))
                up[(a, b)] = acc
        return JetSkewMatrix(m, R, up)

    def __eq__(self, other):
        if not isinstance(other, JetSkewMatrix):
            return NotImplemented
        return self.m == other.m and self.ring is other.ring and self.upper == other.upper

    def __hash__(self):
        return hash((self.m, self.l, tuple(sorted(self.upper.items()))))

    def __repr__(self):
        return f"JetSkewMatrix(m={self.m}, l={self.l}, field={self.field}, nonzero={len(self.upper)})"


# ---------------------------------------------------------------------------
# Pfaffians and determinants


class _Overflow:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "OVERFLOW"

    def __reduce__(self):
        return (_Overflow, ())


OVERFLOW = _Overflow()


def _pf_masked(A: JetSkewMatrix):
    """A memoized function mask -> Pf of the principal submatrix on the set bits."""
    return _pf_table([[A.raw(i, j) for j in range(A.m)] for i in range(A.m)], A.ring)


def _pf_table(entry: list[list], R):
    m = len(entry)
    memo = {0: R.one}

    def pf(mask: int):
        got = memo.get(mask)
        if got is not None:
            return got
        bits = [b for b in range(m) if mask >> b & 1]
        if len(bits) % 2:
            memo[mask] = R.zero
            return R.zero
        s0 = bits[0]
        rest = mask & ~(1 << s0)
        acc = R.zero
        for r, sr in enumerate(bits[1:], start=1):
            a = entry[s0][sr]
            if R.order(a) > R.l:
                continue
            term = R.mul(a, pf(rest & ~(1 << sr)))
            acc = R.add(acc, term) if r % 2 else R.sub(acc, term)
        memo[mask] = acc
        return acc

    return pf


def pfaffian(A: JetSkewMatrix) -> TruncPoly:
    if A.m % 2:
        raise ValueError("Pfaffian of an odd-size matrix")
    return TruncPoly(ring=A.ring, raw=_pf_masked(A)((1 << A.m) - 1))


def principal_pfaffians(A: JetSkewMatrix, k: int) -> dict[tuple, TruncPoly]:
    """All 2k x 2k principal Pfaffians, keyed by the sorted 0-based index tuple."""
    pf = _pf_masked(A)
    out = {}
    for idx in combinations(range(A.m), 2 * k):
        mask = sum(1 << i for i in idx)
        out[idx] = TruncPoly(ring=A.ring, raw=pf(mask))
    return out


def ord_pfaffian_ideal(A: JetSkewMatrix, k: int):
    """Order in t of the ideal of 2k x 2k principal Pfaffians, or OVERFLOW."""
    if not 1 <= k <= A.m // 2:
        raise ValueError("need 1 <= k <= floor(m/2)")
    R = A.ring
    pf = _pf_masked(A)
    best = R.l + 1
    for idx in combinations(range(A.m), 2 * k):
        o = R.order(pf(sum(1 << i for i in idx)))
        if o < best:
            best = o
            if best == 0:
                break
    return OVERFLOW if best > R.l else best


def determinant(rows: Sequence[Sequence], ring):
    """Determinant over a commutative ring by memoized Laplace expansion along rows."""
    m = len(rows)
    R = ring
    memo = {}

    def det(r: int, cols: int):
        if r == m:
            return R.one
        key = cols
        if key in memo:
            return memo[key]
        acc = R.zero
        sign = 0
        for c in range(m):
            if cols >> c & 1:
                continue
            a = rows[r][c]
            if R.order(a) <= R.l:
                term = R.mul(a, det(r + 1, cols | 1 << c))
                acc = R.sub(acc, term) if sign % 2 else R.add(acc, term)
            sign += 1
        memo[key] = acc
        return acc

    return det(0, 0)


# ---------------------------------------------------------------------------
# normal forms and invariant extraction


def delta_matrix(lam: Sequence, m: int, l: int, field=QQ) -> JetSkewMatrix:
    """diag(t^lam_1 J, ..., t^lam_n J [, 0]) with t^(l+1) = 0."""
    n = m // 2
    lam = tuple(l + 1 if x == TOP else x for x in lam)
    validate_lambda(lam, n, l)
    R = ring_for(field, l)
    up = {(2 * k, 2 * k + 1): R.t_power(x) for k, x in enumerate(lam)}
    return JetSkewMatrix(m, R, up)


def _smith_upper(upper: dict, idx: list, R) -> list[int]:
    """Pair orders of an alternating matrix given by its upper-triangle dict."""
    top = R.l + 1
    order, mul, add, sub, inv, shd = R.order, R.mul, R.add, R.sub, R.inv, R.shift_div
    out = []
    a = dict(upper)
    active = list(idx)
    while len(active) >= 2:
        best, piv = top, None
        for s, i in enumerate(active):
            for j in active[s + 1:]:
                x = a.get((i, j))
                if x is None:
                    continue
                o = order(x)
                if o < best:
                    best, piv = o, (i, j)
                    if o == 0:
                        break
            if best == 0:
                break
        if piv is None:
            break
        i, j = piv
        o = best
        uinv = inv(shd(a[(i, j)], o))
        rest = [k for k in active if k != i and k != j]
        zero = R.zero

        def get(u, v):
            if u < v:
                return a.get((u, v), zero)
            return R.neg(a.get((v, u), zero))

        # row_k += y_k row_i - x_k row_j clears a_ik and a_jk
        xs = {k: mul(shd(get(i, k), o), uinv) for k in rest}
        ys = {k: mul(shd(get(j, k), o), uinv) for k in rest}
        piv_val = a[(i, j)]
        new = {}
        for s, k in enumerate(rest):
            xk, yk = xs[k], ys[k]
            aki, akj = get(k, i), get(k, j)
            for kk in rest[s + 1:]:
                v = get(k, kk)
                v = add(v, mul(ys[kk], aki))
                v = sub(v, mul(xs[kk], akj))
                v = add(v, mul(yk, get(i, kk)))
                v = sub(v, mul(xk, get(j, kk)))
                v = add(v, mul(sub(mul(xk, ys[kk]), mul(yk, xs[kk])), piv_val))
                if order(v) < top:
                    new[(k, kk)] = v
        a = new
        active = rest
        out.append(o)
    n = len(idx) // 2
    return out + [top] * (n - len(out))


def smith_lambda(A: JetSkewMatrix) -> tuple:
    """The lambda tuple of the congruence orbit of A (entries l + 1 stand for TOP)."""
    return tuple(_smith_upper(A.upper, list(range(A.m)), A.ring))


# ---------------------------------------------------------------------------
# rigidity of Pfaffian patterns


def standard_symplectic(k: int, m: int, field=QQ, scale=None) -> JetSkewMatrix:
    """scale * S_k (k copies of J) padded with zeros to size m, over a field (l = 0)."""
    R = ring_for(field, 0)
    c = R.one if scale is None else R.from_coeffs([scale])
    return JetSkewMatrix(m, R, {(2 * t, 2 * t + 1): c for t in range(k)})


def rigidity_hypothesis(H: JetSkewMatrix, r: int, k: int):
    """The common value a if the distinguished Pfaffian pattern holds, else None."""
    R = H.ring
    pf = _pf_masked(H)
    distinguished = set()
    for pairs in combinations(range(k), r):
        distinguished.add(sum(3 << (2 * t) for t in pairs))
    common = None
    for idx in combinations(range(H.m), 2 * r):
        mask = sum(1 << i for i in idx)
        v = pf(mask)
        if mask in distinguished:
            if R.order(v) > R.l:
                return None
            if common is None:
                common = v
            elif v != common:
                return None
        elif R.order(v) <= R.l:
            return None
    return common


def rigidity_conclusion(H: JetSkewMatrix, r: int, k: int) -> bool:
    R = H.ring
    for (i, j), x in H.upper.items():
        if j >= 2 * k:
            return False
    if k > r:
        c = H.upper.get((0, 1))
        if c is None:
            return False
        for (i, j), x in H.upper.items():
            if not (j == i + 1 and i % 2 == 0 and x == c):
                return False
        return all((2 * t, 2 * t + 1) in H.upper for t in range(k))
    return True


def rigidity_check(H: JetSkewMatrix, r: int, k: int) -> bool:
    """True iff the Pfaffian pattern hypothesis implies the block conclusion for H."""
    if not 1 <= r <= k <= H.m // 2:
        raise ValueError("need 1 <= r <= k <= floor(size/2)")
    if rigidity_hypothesis(H, r, k) is None:
        return True
    return rigidity_conclusion(H, r, k)


# ---------------------------------------------------------------------------
# random matrices and text format


def random_skew(m: int, l: int, field, rng: random.Random) -> JetSkewMatrix:
    R = ring_for(field, l)
    return JetSkewMatrix(m, R, {(i, j): R.random(rng) for i in range(m) for j in range(i + 1, m)})


def random_invertible(m: int, l: int, field, rng: random.Random) -> list[list]:
    """A random m x m matrix over the ring whose determinant is a unit."""
    R = ring_for(field, l)
    while True:
        P = [[R.random(rng) for _ in range(m)] for _ in range(m)]
        if R.order(determinant(P, R)) == 0:
            return P


_TERM = re.compile(r"^([+-]?\d*)\*?(t(?:\^(\d+))?)?$")


def parse_poly(text: str) -> dict[int, int]:
    """Integer polynomial in t, e.g. '1+2t^2' or '-t+3', as {exponent: coefficient}."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty polynomial")
    out: dict[int, int] = {}
    toks = re.findall(r"[+-]?[^+-]+", s)
    if "".join(toks) != s:
        raise ValueError(f"cannot parse {text!r}")
    for tok in toks:
        mt = _TERM.match(tok)
        if not mt or (mt.group(1) in ("", "+", "-") and not mt.group(2)):
            raise ValueError(f"cannot parse term {tok!r} in {text!r}")
        cs, tpart, exp = mt.groups()
        c = int(cs) if cs not in ("", "+", "-") else (-1 if cs == "-" else 1)
        e = 0 if not tpart else (int(exp) if exp else 1)
        out[e] = out.get(e, 0) + c
    return out


def parse_matrix(text: str) -> JetSkewMatrix:
    """Read the 'm l field' header and 1-indexed 'i j poly' lines."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ValueError("empty matrix file")
    head = lines[0].split()
    if len(head) != 3:
        raise ValueError("header must be 'm l field'")
    m, l = int(head[0]), int(head[1])
    field = field_from_name(head[2])
    entries = {}
    for ln in lines[1:]:
        parts = ln.split(None, 2)
        if len(parts) != 3:
            raise ValueError(f"bad entry line {ln!r}")
        i, j = int(parts[0]) - 1, int(parts[1]) - 1
        if not (0 <= i < m and 0 <= j < m) or i == j:
            raise ValueError(f"bad index pair in {ln!r}")
        poly = parse_poly(parts[2])
        coeffs = [0] * (max(poly) + 1)
        for e, c in poly.items():
            coeffs[e] = c
        key = (min(i, j), max(i, j))
        if key in entries:
            raise ValueError(f"duplicate entry {key[0] + 1} {key[1] + 1}")
        entries[(i, j)] = coeffs
    return JetSkewMatrix.from_entries(m, l, field, entries)


def format_matrix(A: JetSkewMatrix) -> str:
    if isinstance(A.field, Rationals):
        fname = "Q"
    else:
        fname = A.field.name
        if A.field.degree > 1:
            raise ValueError("text format only covers prime-field coefficients")
    out = [f"{A.m} {A.l} {fname}"]
    for (i, j), _ in sorted(A.upper.items()):
        out.append(f"{i + 1} {j + 1} {A.entry(i, j).format()}")
    return "\n".join(out) + "\n"


__all__ = [
    "OVERFLOW",
    "JetSkewMatrix",
    "TableRing",
    "TruncPoly",
    "TruncRing",
    "delta_matrix",
    "determinant",
    "format_matrix",
    "ord_pfaffian_ideal",
    "parse_matrix",
    "parse_poly",
    "pfaffian",
    "principal_pfaffians",
    "random_invertible",
    "random_skew",
    "rigidity_check",
    "ring_for",
    "smith_lambda",
    "standard_symplectic",
]

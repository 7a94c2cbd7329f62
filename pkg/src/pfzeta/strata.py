"""Orbit invariants of skew-symmetric jets and their combinatorics.

A lambda tuple is a plain nondecreasing ``tuple`` of length ``n = m // 2``.
At a finite jet level ``l`` the value ``l + 1`` plays the role of the top
element (a block that vanishes modulo ``t^(l+1)``). At the arc level the top
element is :data:`TOP` (``math.inf``), which absorbs sums and compares above
every integer.
"""

from __future__ import annotations

import math
from itertools import combinations_with_replacement
from typing import Iterator, Sequence

TOP = math.inf

LambdaTuple = tuple


def validate_lambda(lam: Sequence, n: int | None = None, l: int | None = None) -> tuple:
    """Return ``lam`` as a tuple, raising ``ValueError("malformed lambda")`` if invalid.

    With ``l`` given, entries must lie in ``0..l+1``; with ``l=None`` (arc level)
    entries are non-negative integers or ``TOP``.
    """
    lam = tuple(lam)
    if n is not None and len(lam) != n:
        raise ValueError(f"malformed lambda: expected {n} entries, got {lam}")
    hi = TOP if l is None else l + 1
    for x in lam:
        if x != TOP and (not isinstance(x, int) or isinstance(x, bool)):
            raise ValueError(f"malformed lambda: non-integer entry in {lam}")
        if x < 0 or x > hi:
            raise ValueError(f"malformed lambda: entry out of range in {lam}")
    if any(a > b for a, b in zip(lam, lam[1:])):
        raise ValueError(f"malformed lambda: entries not sorted in {lam}")
    return lam


def format_lambda(lam: Sequence, l: int | None = None) -> str:
    top = TOP if l is None else l + 1
    return "(" + ",".join("TOP" if x == top else str(x) for x in lam) + ")"


def parse_lambda(text: str, l: int | None = None) -> tuple:
    """Inverse of :func:`format_lambda`; also accepts plain comma lists."""
    body = text.strip().strip("()")
    if not body:
        return ()
    top = TOP if l is None else l + 1
    out = []
    for tok in body.split(","):
        tok = tok.strip()
        out.append(top if tok.upper() in ("TOP", "INF") else int(tok))
    return tuple(out)


def _nondecreasing(n: int, lo: int, hi: int) -> Iterator[tuple]:
    yield from combinations_with_replacement(range(lo, hi + 1), n)


def _heads(m0: int, p: int, hi: int) -> Iterator[tuple]:
    """Nondecreasing m0-tuples with entries <= hi summing to p."""

    def rec(k, remaining, lo):
        if k == 0:
            if remaining == 0:
                yield ()
            return
        # x is the smallest of the k remaining entries, so k * x <= remaining
        for x in range(lo, min(hi, remaining // k) + 1):
            for rest in rec(k - 1, remaining - x, x):
                yield (x,) + rest

    yield from rec(m0, p, 0)


def enum_strata(n: int, m0: int, p: int, l: int | None = None, cap: int | None = None) -> list[tuple]:
    """All tuples of Lambda_{n,l} whose first ``m0`` entries sum to ``p``.

    Finite level ``l``: entries range over ``0..l+1``. Arc level (``l=None``):
    an explicit ``cap`` bounds the (finite) entries.
    """
    if not 1 <= m0 <= n:
        raise ValueError("need 1 <= m0 <= n")
    if p < 0:
        raise ValueError("p must be non-negative")
    if l is None:
        if cap is None:
            raise ValueError("arc-level enumeration needs an explicit cap")
        hi = cap
    else:
        if l < 0:
            raise ValueError("level must be non-negative")
        hi = l + 1
    out = []
    for head in _heads(m0, p, hi):
        lo = head[-1]
        for tail in _nondecreasing(n - m0, lo, hi):
            out.append(head + tail)
    return sorted(out)


def enum_lambda(n: int, l: int) -> list[tuple]:
    """All of Lambda_{n,l} at a finite level."""
    return list(_nondecreasing(n, 0, l + 1))


def _prefix_sums(lam: Sequence) -> list:
    out, acc = [], 0
    for x in lam:
        acc = acc + x
        out.append(acc)
    return out


def precedes(a: Sequence, b: Sequence) -> bool:
    """Closure order: every prefix sum of ``a`` is at most that of ``b``."""
    if len(a) != len(b):
        raise ValueError("tuples of different lengths are not comparable")
    return all(x <= y for x, y in zip(_prefix_sums(a), _prefix_sums(b)))


def minimal_elements(items: Sequence[tuple]) -> list[tuple]:
    items = list(dict.fromkeys(items))
    return sorted(
        x for x in items if not any(y != x and precedes(y, x) for y in items)
    )


def components(n: int, m0: int, p: int) -> list[tuple]:
    """Irreducible components of the arc-level contact locus, as minimal tuples.

    A minimal tuple has its tail (positions past ``m0``) equal to its
    ``m0``-th entry, so only heads summing to ``p`` need to be compared.
    """
    if not 1 <= m0 <= n:
        raise ValueError("need 1 <= m0 <= n")
    if p < 0:
        raise ValueError("p must be non-negative")
    cands = [head + (head[-1],) * (n - m0) for head in _heads(m0, p, p)]
    return minimal_elements(cands)


def hasse(n: int, m0: int, p: int, cap: int) -> list[tuple[tuple, tuple]]:
    """Covering pairs (lower, upper) of the closure order on the capped stratum set."""
    if cap < p:
        raise ValueError("cap must be at least p")
    elems = enum_strata(n, m0, p, cap=cap)
    below = {
        x: [y for y in elems if y != x and precedes(x, y)] for x in elems
    }
    edges = []
    for x in elems:
        ups = below[x]
        for y in ups:
            if not any(z != y and precedes(z, y) for z in ups):
                edges.append((x, y))
    return edges


def closed_family(n: int, m0: int, p: int) -> list[dict]:
    """Literal evaluation of the closed-form component family.

    Returns one record per index ``k``; ``valid`` says whether the produced
    tuple is nondecreasing with first-``m0`` sum equal to ``p``. Used only for
    diagnostics against :func:`components`.
    """
    out = []
    if p == 0:
        return out
    for k in range(-(-p // m0), m0 + 1):
        if k == 0:
            continue
        f = p // k
        z = m0 - f  # positions 1..z are zero
        if z < 0 or z + 1 > n:
            out.append({"k": k, "lambda": None, "valid": False})
            continue
        lam = [0] * z + [p - k * f] + [k] * (n - z - 1)
        lam = tuple(lam)
        valid = all(a <= b for a, b in zip(lam, lam[1:])) and sum(lam[:m0]) == p
        out.append({"k": k, "lambda": lam, "valid": valid})
    return out


def compositions(n: int) -> Iterator[tuple]:
    """Ordered tuples of positive integers summing to ``n``."""
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        for rest in compositions(n - first):
            yield (first,) + rest


def alpha(u: Sequence[int], m0: int) -> list[int]:
    out = []
    before = 0
    for ui in u:
        if m0 < before + ui:
            out.append(max(0, m0 - before))
        else:
            out.append(ui)
        before += ui
    return out


def epsilon(m0: int, n: int) -> list[int]:
    return [max(0, m0 - i + 1) for i in range(1, n + 1)]


def blocks(lam: Sequence[int]) -> list[tuple[int, int]]:
    """Run-length blocks (value, multiplicity) of a sorted tuple."""
    out: list[list] = []
    for x in lam:
        if out and out[-1][0] == x:
            out[-1][1] += 1
        else:
            out.append([x, 1])
    return [(v, c) for v, c in out]


def b_of_lambda(lam: Sequence[int], m: int) -> int:
    """Sum over blocks of (value + 1) * n_i * (2m - 4 N_i + 2 n_i - 1)."""
    if any(x == TOP for x in lam):
        raise ValueError("b(lambda) needs finite entries")
    total, N = 0, 0
    for v, ni in blocks(lam):
        N += ni
        total += (v + 1) * ni * (2 * m - 4 * N + 2 * ni - 1)
    return total

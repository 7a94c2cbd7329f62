"""Finite-field brute force: exhaustive censuses of matrix jets over F_q[t]/(t^(l+1)).

Each above-diagonal entry is an int in ``range(q^(l+1))``; a matrix is a
mixed-radix counter over those entries. The space is split into disjoint
chunks by fixing the leading entries, chunks are tallied independently
(optionally in worker processes) and the tallies are merged by addition, so
results do not depend on the partitioning.
"""

from __future__ import annotations

import json
import os
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product

import numpy as np

from .fields import GF
from .groth import orbit_class, point_count, stabilizer_class
from .jetalg import TableRing, _pf_table, _smith_upper, ring_for
from .strata import enum_lambda, enum_strata, format_lambda
from .zeta import zvp_closed_form

DEFAULT_BUDGET = 10**9
CHUNK_TARGET = 64


class BudgetExceeded(RuntimeError):
    def __init__(self, required: int, budget: int, what: str = "enumeration"):
        super().__init__(f"{what} needs {required} candidates, budget is {budget}")
        self.required, self.budget = required, budget


def default_threads() -> int:
    env = os.environ.get("PFZ_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _check_field(q: int, allow_char2: bool):
    F = GF(q)
    if F.char == 2 and not allow_char2:
        raise ValueError("q must be odd; characteristic 2 runs need allow_char2")
    return F


def _guard(cost: int, budget: int | None, what: str):
    budget = DEFAULT_BUDGET if budget is None else budget
    if cost > budget:
        raise BudgetExceeded(cost, budget, what)


def _pairs(m: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(m) for j in range(i + 1, m)]


def _prefixes(n_entries: int, size: int) -> list[tuple]:
    c = 0
    while c < n_entries and size**c < CHUNK_TARGET:
        c += 1
    return list(product(range(size), repeat=c))


def _ring(q: int, l: int):
    R = ring_for(GF(q), l)
    if not isinstance(R, TableRing):
        raise ValueError(f"F_{q}[t]/(t^{l + 1}) is too large for table arithmetic")
    return R


def _smith_chunk(m: int, l: int, q: int, prefix: tuple) -> dict:
    R = _ring(q, l)
    pairs = _pairs(m)
    idx = list(range(m))
    tally: Counter = Counter()
    head = {p: v for p, v in zip(pairs, prefix) if v}
    rest = pairs[len(prefix):]
    for vals in product(range(R.size), repeat=len(rest)):
        up = dict(head)
        for p, v in zip(rest, vals):
            if v:
                up[p] = v
        tally[tuple(_smith_upper(up, idx, R))] += 1
    return dict(tally)


def _contact_chunk(m: int, l: int, q: int, prefix: tuple) -> dict:
    """Tally of (ord P_1, ..., ord P_n) with OVERFLOW recorded as l + 1."""
    R = _ring(q, l)
    pairs = _pairs(m)
    n = m // 2
    top = l + 1
    subsets = [[mask for mask in range(1 << m) if bin(mask).count("1") == 2 * k] for k in range(2, n + 1)]
    order, neg = R.order_t, R.neg_t
    tally: Counter = Counter()
    rest = pairs[len(prefix):]
    for vals in product(range(R.size), repeat=len(rest)):
        full = prefix + vals
        entry = [[0] * m for _ in range(m)]
        for (i, j), v in zip(pairs, full):
            entry[i][j] = v
            entry[j][i] = neg[v]
        # the 2 x 2 principal Pfaffians are the entries themselves
        key = [min(order[v] for v in full)]
        pf = _pf_table(entry, R)
        for masks in subsets:
            best = top
            for mask in masks:
                o = R.order(pf(mask))
                if o < best:
                    best = o
                    if o == 0:
                        break
            key.append(best)
        tally[tuple(key)] += 1
    return dict(tally)


def _run_chunks(fn, m: int, l: int, q: int, threads: int | None) -> Counter:
    R = _ring(q, l)
    prefixes = _prefixes(len(_pairs(m)), R.size)
    threads = default_threads() if threads is None else threads
    total: Counter = Counter()
    if threads <= 1 or len(prefixes) == 1:
        for pre in prefixes:
            total.update(fn(m, l, q, pre))
        return total
    with ProcessPoolExecutor(max_workers=threads) as pool:
        futures = [pool.submit(fn, m, l, q, pre) for pre in prefixes]
        for fut in futures:
            total.update(fut.result())
    return total


def census_cost(m: int, l: int, q: int) -> int:
    return q ** ((l + 1) * m * (m - 1) // 2)


@dataclass
class CensusReport:
    m: int
    l: int
    q: int
    tally: dict
    total: int
    expected: dict
    mismatches: list = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.mismatches and self.total == census_cost(self.m, self.l, self.q)

    def to_dict(self) -> dict:
        rows = []
        for lam in sorted(set(self.tally) | set(self.expected)):
            rows.append(
                {
                    "lambda": format_lambda(lam, self.l),
                    "count": self.tally.get(lam, 0),
                    "expected": self.expected.get(lam),
                }
            )
        return {
            "params": {"m": self.m, "l": self.l, "q": self.q},
            "tally": rows,
            "total": self.total,
            "mismatches": [dict(mm, **{"lambda": format_lambda(mm["lambda"], self.l)}) for mm in self.mismatches],
            "elapsed": round(self.elapsed, 6),
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


def census(
    m: int,
    l: int,
    q: int,
    *,
    budget: int | None = None,
    threads: int | None = None,
    allow_char2: bool = False,
) -> CensusReport:
    """Tally smith_lambda over every alternating m x m matrix and compare with orbit classes."""
    if m < 2 or l < 0:
        raise ValueError("need m >= 2 and l >= 0")
    _check_field(q, allow_char2)
    _guard(census_cost(m, l, q), budget, "census")
    t0 = time.perf_counter()
    tally = _run_chunks(_smith_chunk, m, l, q, threads)
    expected = {lam: point_count(orbit_class(m, lam, l), q) for lam in enum_lambda(m // 2, l)}
    mismatches = []
    for lam in sorted(set(tally) | set(expected)):
        got, exp = tally.get(lam, 0), expected.get(lam, 0)
        if got != exp:
            mismatches.append({"lambda": lam, "count": got, "expected": exp})
    return CensusReport(
        m=m,
        l=l,
        q=q,
        tally=dict(sorted(tally.items())),
        total=sum(tally.values()),
        expected=expected,
        mismatches=mismatches,
        elapsed=time.perf_counter() - t0,
    )


@lru_cache(maxsize=32)
def _contact_tally(m: int, l: int, q: int, threads: int | None) -> dict:
    return dict(_run_chunks(_contact_chunk, m, l, q, threads))


def contact_tally(
    m: int,
    l: int,
    q: int,
    *,
    budget: int | None = None,
    threads: int | None = None,
    allow_char2: bool = False,
) -> dict:
    """Counts of Pfaffian-ideal order tuples over all matrices (cached per m, l, q)."""
    _check_field(q, allow_char2)
    _guard(census_cost(m, l, q), budget, "contact census")
    return _contact_tally(m, l, q, threads)


def contact_count(
    m: int,
    m0: int,
    p: int,
    l: int,
    q: int,
    *,
    budget: int | None = None,
    threads: int | None = None,
    allow_char2: bool = False,
) -> tuple[int, int]:
    """(matrices with ord of the 2m0-Pfaffian ideal equal to p, count predicted by orbit classes)."""
    n = m // 2
    if not 1 <= m0 <= n:
        raise ValueError("need 1 <= m0 <= floor(m/2)")
    if not 0 <= p <= l:
        raise ValueError("need 0 <= p <= l")
    tally = contact_tally(m, l, q, budget=budget, threads=threads, allow_char2=allow_char2)
    direct = sum(c for key, c in tally.items() if key[m0 - 1] == p)
    predicted = sum(point_count(orbit_class(m, lam, l), q) for lam in enum_strata(n, m0, p, l=l))
    return direct, predicted


@lru_cache(maxsize=16)
def _det_histogram(q: int, l: int) -> np.ndarray:
    """Number of 2 x 2 matrices (a, b; c, d) over the ring with each determinant value."""
    R = _ring(q, l)
    S = R.size
    mul = np.array(R.mul_t, dtype=np.int32).reshape(S, S)
    sub = np.array(R.sub_t, dtype=np.int32).reshape(S, S)
    el = np.arange(S)
    B, C, D = np.meshgrid(el, el, el, indexing="ij")
    bc = mul[B, C]
    hist = np.zeros(S, dtype=np.int64)
    for a in range(S):
        hist += np.bincount(sub[mul[a][D], bc].ravel(), minlength=S)
    return hist


def stabilizer_census(
    m: int,
    lam,
    l: int,
    q: int,
    *,
    budget: int | None = None,
    allow_char2: bool = False,
) -> int:
    """Number of invertible 2 x 2 jets A with A delta A^T = delta, by brute force."""
    if m != 2:
        raise ValueError("stabilizer census is implemented for m = 2 only")
    _check_field(q, allow_char2)
    R = _ring(q, l)
    S = R.size
    _guard(S**4, budget, "stabilizer census")
    (lam1,) = tuple(lam)
    d = R.t_power(l + 1 if lam1 == float("inf") else lam1)
    hist = _det_histogram(q, l)
    # (A delta A^T)_{12} = delta_{12} det(A) and the other entries vanish identically,
    # so A is counted iff det(A) is a unit with delta_{12} det(A) = delta_{12}
    return sum(int(hist[x]) for x in range(S) if R.order(x) == 0 and R.mul(d, x) == d)


def stabilizer_expected(m: int, lam, l: int, q: int) -> int:
    return point_count(stabilizer_class(m, tuple(lam), l), q)


def vp_coefficient_check(
    m: int,
    m0: int,
    p: int,
    q: int,
    *,
    budget: int | None = None,
    threads: int | None = None,
    allow_char2: bool = False,
) -> dict:
    """Compare the T^p coefficient at L = q with the level-p contact count / q^(p m(m-1)/2)."""
    tally = contact_tally(m, p, q, budget=budget, threads=threads, allow_char2=allow_char2)
    direct = sum(c for key, c in tally.items() if key[m0 - 1] == p)
    rhs = Fraction(direct, q ** (p * m * (m - 1) // 2))
    lhs = Fraction(zvp_closed_form(m, m0).coefficient(p)(q))
    return {"m": m, "m0": m0, "p": p, "q": q, "closed_form": lhs, "census": rhs, "verdict": lhs == rhs}

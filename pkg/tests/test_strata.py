from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pfzeta.strata import (
    TOP,
    alpha,
    b_of_lambda,
    closed_family,
    components,
    compositions,
    enum_lambda,
    enum_strata,
    epsilon,
    format_lambda,
    hasse,
    minimal_elements,
    parse_lambda,
    precedes,
    validate_lambda,
)


def brute_minimal(n, m0, p, cap):
    """Pairwise filter over every nondecreasing tuple with entries <= cap."""
    pool = [t for t in product(range(cap + 1), repeat=n) if list(t) == sorted(t) and sum(t[:m0]) == p]

    def le(a, b):
        sa = sb = 0
        for x, y in zip(a, b):
            sa, sb = sa + x, sb + y
            if sa > sb:
                return False
        return True

    return {a for a in pool if not any(b != a and le(b, a) for b in pool)}


def test_enum_strata_examples():
    assert enum_strata(2, 2, 3, l=3) == [(0, 3), (1, 2)]
    assert enum_strata(2, 1, 1, l=1) == [(1, 1), (1, 2)]
    assert enum_strata(1, 1, 0, l=5) == [(0,)]


def test_enum_strata_errors():
    with pytest.raises(ValueError):
        enum_strata(2, 3, 1, l=1)
    with pytest.raises(ValueError):
        enum_strata(2, 1, -1, l=1)
    with pytest.raises(ValueError):
        enum_strata(2, 1, 1)


def test_enum_strata_matches_filter():
    for n in range(1, 4):
        for l in range(0, 3):
            for m0 in range(1, n + 1):
                for p in range(0, 5):
                    want = sorted(t for t in enum_lambda(n, l) if sum(t[:m0]) == p)
                    assert enum_strata(n, m0, p, l=l) == want


def test_precedes_examples():
    assert precedes((0, 3), (1, 2))
    assert not precedes((1, 2), (0, 3))
    assert all(precedes((0, 0), t) for t in enum_strata(2, 1, 1, cap=4))
    assert precedes((1, 2), (1, TOP))
    with pytest.raises(ValueError):
        precedes((1,), (1, 2))


lam3 = st.lists(st.integers(0, 4), min_size=3, max_size=3).map(lambda x: tuple(sorted(x)))


@settings(max_examples=80, deadline=None)
@given(lam3, lam3, lam3)
def test_precedes_is_partial_order(a, b, c):
    assert precedes(a, a)
    if precedes(a, b) and precedes(b, a):
        assert a == b
    if precedes(a, b) and precedes(b, c):
        assert precedes(a, c)


def test_components_examples():
    assert components(2, 2, 3) == [(0, 3)]
    assert set(components(3, 2, 3)) == {(1, 2, 2), (0, 3, 3)}


def test_components_brute_force():
    for n in range(1, 5):
        for m0 in range(1, n + 1):
            for p in range(0, 6):
                assert set(components(n, m0, p)) == brute_minimal(n, m0, p, p + 1), (n, m0, p)


def test_components_full_rank_unique():
    for n in range(1, 6):
        for p in range(0, 7):
            assert components(n, n, p) == [(0,) * (n - 1) + (p,)]


def test_closed_family_records():
    recs = closed_family(3, 2, 3)
    assert [r["k"] for r in recs] == [2]
    assert recs[0]["lambda"] == (0, 1, 2) and not recs[0]["valid"]
    assert closed_family(2, 1, 0) == []


def test_hasse_examples():
    assert hasse(2, 2, 2, 2) == [((0, 2), (1, 1))]
    assert hasse(1, 1, 3, 5) == []
    assert hasse(2, 1, 1, 2) == [((1, 1), (1, 2))]
    with pytest.raises(ValueError):
        hasse(2, 1, 3, 2)


def test_minimal_elements_dedup():
    assert minimal_elements([(1, 1), (0, 2), (1, 1)]) == [(0, 2)]


def test_alpha_epsilon_b():
    assert alpha((2, 1), 2) == [2, 0]
    assert alpha((1, 1, 1), 2) == [1, 1, 0]
    assert alpha((3,), 2) == [2]
    assert epsilon(2, 3) == [2, 1, 0]
    assert b_of_lambda((0,), 2) == 1
    with pytest.raises(ValueError):
        b_of_lambda((0, TOP), 4)


def test_compositions_count():
    for n in range(1, 8):
        cs = list(compositions(n))
        assert len(cs) == 2 ** (n - 1)
        assert all(sum(c) == n and min(c) >= 1 for c in cs)


def test_lambda_format_round_trip():
    for lam in enum_lambda(3, 2):
        assert parse_lambda(format_lambda(lam, 2), 2) == lam
    assert format_lambda((1, TOP)) == "(1,TOP)"
    assert parse_lambda("(1,TOP)") == (1, TOP)


def test_validate_lambda_errors():
    for bad in [(2, 1), (0, 5), (-1, 0), (0.5, 1)]:
        with pytest.raises(ValueError, match="malformed lambda"):
            validate_lambda(bad, 2, 3)
    with pytest.raises(ValueError, match="malformed lambda"):
        validate_lambda((0,), 2)

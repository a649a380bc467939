from itertools import combinations
from math import comb

import pytest
from hypothesis import given, strategies as st

from almostint.bounds import delta_b_r, size_b_plus, size_b_r
from almostint.constructions import (
    b_plus,
    b_r,
    complement_family,
    complements,
    full_star,
    hilton_milner,
    lex_family,
    lex_key,
    lex_less,
    rank_lex,
    unrank_lex,
)
from almostint.errors import ParameterError
from almostint.family import (
    Params,
    SetFamily,
    is_almost_intersecting,
    is_intersecting,
    mask_of,
    max_degree,
    without,
)
from almostint.partition import canonical_partition


def brute_b_r(n, k, r):
    """B_r straight from its definition, on element tuples."""
    head = set(range(2, r + 1))
    out = []
    for s in combinations(range(1, n + 1), k):
        if (1 in s and head & set(s)) or (1 not in s and head <= set(s)):
            out.append(s)
    return sorted(out)


def test_full_star_examples():
    assert full_star(5, 2, 1).sets() == [(1, 2), (1, 3), (1, 4), (1, 5)]
    assert len(full_star(6, 3, 2)) == 10
    assert is_intersecting(full_star(7, 3, 5))


def test_b_r_matches_definition():
    for n, k in [(7, 3), (9, 4), (10, 4), (11, 5)]:
        for r in range(3, k + 2):
            assert sorted(b_r(n, k, r).sets()) == brute_b_r(n, k, r)


def test_b_r_examples():
    assert len(b_r(10, 4, 3)) == len(b_r(10, 4, 4)) == 70
    hm = hilton_milner(10, 4)
    assert without(hm, 1).sets() == [(2, 3, 4, 5)]
    for r in (3, 4, 5):
        assert is_intersecting(b_r(9, 4, r))


@pytest.mark.parametrize("n,k", [(9, 4), (11, 5), (12, 4), (13, 6)])
def test_b_r_size_chain(n, k):
    sizes = {r: len(b_r(n, k, r)) for r in range(3, k + 2)}
    assert sizes[3] == sizes[4]
    assert all(sizes[r] < sizes[r + 1] for r in range(4, k + 1))
    for r, s in sizes.items():
        assert s == size_b_r(n, k, r)
        assert max_degree(b_r(n, k, r)) == (1, delta_b_r(n, k, r))


def test_b_r_rejects_bad_r():
    for r in (2, 6):
        with pytest.raises(ParameterError):
            b_r(9, 4, r)


def test_b_plus_examples():
    f = b_plus(13, 3, [1, 5, 6])
    assert len(f) == 32 == size_b_plus(13, 3)
    assert is_almost_intersecting(f)
    part = canonical_partition(b_plus(10, 4))
    assert part.ell == 1
    (p, q), = part.pairs
    assert {p, q} == {mask_of(range(2, 6)), mask_of([1, 6, 7, 8])}


def test_b_plus_default_extra_is_lex_least():
    # {1} + [k+2, 2k] is the lex-first k-set through 1 that misses [2, k+1]
    for n, k in [(8, 3), (10, 4), (12, 5)]:
        ok = [s for s in combinations(range(1, n + 1), k)
              if 1 in s and not set(s) & set(range(2, k + 2))]
        extra = set(b_plus(n, k).masks) - set(hilton_milner(n, k).masks)
        assert extra == {mask_of(min(ok))}


@pytest.mark.parametrize("extra", [[2, 5, 6], [1, 2, 6], [4, 5, 6]])
def test_b_plus_rejects_bad_extra(extra):
    with pytest.raises(ParameterError):
        b_plus(9, 3, extra)


def test_b_plus_almost_intersecting_on_grid():
    for k in range(2, 6):
        for n in range(2 * k + 2, 2 * k + 6):
            outside = range(k + 2, n + 1)
            for rest in list(combinations(outside, k - 1))[:6]:
                assert is_almost_intersecting(b_plus(n, k, [1, *rest]))


# -- lex order ---------------------------------------------------------------


def test_lex_examples():
    n, k = 9, 4
    assert lex_family(k, (2, n), k).sets() == [(2, 3, 4, j) for j in range(5, 2 * k + 1)]
    for r in (3, 4):
        m = comb(n - 1, k - 1) - comb(n - r, k - 1)
        got = set(lex_family(m, (2, n), k - 1).masks)
        want = {mask_of(s) for s in combinations(range(2, n + 1), k - 1) if set(s) & set(range(2, r + 1))}
        assert got == want
    assert lex_family(1, (1, 7), 3).sets() == [(1, 2, 3)]


def test_lex_order_is_tuple_order():
    sets = list(combinations(range(1, 8), 3))
    assert [unrank_lex(i, (1, 7), 3) for i in range(len(sets))] == [mask_of(s) for s in sets]
    assert all(rank_lex(mask_of(s), (1, 7)) == i for i, s in enumerate(sets))
    a, b = mask_of((1, 5, 6)), mask_of((2, 3, 4))
    assert lex_less(a, b) and not lex_less(b, a)
    assert lex_key(mask_of((3, 1, 2))) == (1, 2, 3)


@given(st.integers(1, 56), st.integers(1, 56))
def test_lex_family_nested(m1, m2):
    lo, hi = sorted((m1, m2))
    a, b = lex_family(lo, (2, 9), 3), lex_family(hi, (2, 9), 3)
    assert set(a.masks) <= set(b.masks)
    assert len(a) == lo


def test_lex_family_rejects_bad_m():
    with pytest.raises(ParameterError):
        lex_family(0, (1, 5), 2)
    with pytest.raises(ParameterError):
        lex_family(11, (1, 5), 2)


# -- complements -------------------------------------------------------------


def test_complement_family_examples():
    p = Params(6, 2)
    universe = SetFamily.from_sets(6, 2, combinations(range(1, 7), 2))
    assert len(complement_family(universe)) == 0
    assert len(complement_family(SetFamily(p))) == comb(6, 4)
    f = full_star(6, 2, 1)
    assert len(complement_family(f)) == comb(6, 2) - len(f)
    assert complement_family(f).k == 4


def test_complements_of_members():
    f = SetFamily.from_sets(6, 2, [(1, 2), (3, 4)])
    assert complements(f).sets() == [(1, 2, 5, 6), (3, 4, 5, 6)]

"""Builders for the named families: stars, B_r, Hilton-Milner, B+, lex initial segments."""
from __future__ import annotations

from itertools import combinations
from typing import Optional, Sequence

from .bounds import binom
from .errors import ParameterError
from .family import KSubset, Params, SetFamily, elements_of, interval_mask, mask_of


def all_ksets(params: Params) -> list[int]:
    """Every k-subset of [n] as a mask, ascending."""
    return sorted(mask_of(c) for c in combinations(range(1, params.n + 1), params.k))


def full_star(n: int, k: int, x: int) -> SetFamily:
    params = Params(n, k)
    params.check_element(x)
    bit = 1 << (x - 1)
    return SetFamily(params, tuple(m for m in all_ksets(params) if m & bit))


def b_r(n: int, k: int, r: int) -> SetFamily:
    """Sets through 1 meeting [2, r], plus sets avoiding 1 that contain [2, r]."""
    params = Params(n, k)
    if not 3 <= r <= k + 1:
        raise ParameterError(f"need 3 <= r <= k+1, got r={r}")
    head = interval_mask(2, r)
    members = [
        m for m in all_ksets(params)
        if (m & 1 and m & head) or (not m & 1 and m & head == head)
    ]
    return SetFamily(params, tuple(members))


def hilton_milner(n: int, k: int) -> SetFamily:
    return b_r(n, k, k + 1)


def default_extra(n: int, k: int) -> KSubset:
    """Lex-least set through 1 avoiding [2, k+1]: {1} together with [k+2, 2k]."""
    return KSubset.of([1, *range(k + 2, 2 * k + 1)], Params(n, k))


def b_plus(n: int, k: int, extra: Optional[KSubset | Sequence[int]] = None) -> SetFamily:
    """Hilton-Milner family plus one set through 1 that misses [2, k+1]."""
    params = Params(n, k)
    if extra is None:
        if n < 2 * k:
            raise ParameterError(f"default extra set needs n >= 2k, got n={n}, k={k}")
        extra = default_extra(n, k)
    elif not isinstance(extra, KSubset):
        extra = KSubset.of(extra, params)
    if extra.params != params:
        raise ParameterError("extra set has different parameters")
    if not extra.bits & 1 or extra.bits & interval_mask(2, k + 1):
        raise ParameterError(f"extra set {extra} must contain 1 and avoid [2, {k + 1}]")
    return hilton_milner(n, k).with_masks([extra.bits])


# -- lexicographic order ----------------------------------------------------


def lex_key(s) -> tuple[int, ...]:
    """Sort key realising A <_L B iff min(A - B) < min(B - A).

    For equal-size sets this is plain tuple order on the sorted elements.
    """
    bits = s.bits if isinstance(s, KSubset) else s
    return elements_of(bits)


def lex_less(a, b) -> bool:
    a = a.bits if isinstance(a, KSubset) else a
    b = b.bits if isinstance(b, KSubset) else b
    if a == b:
        return False
    da, db = a & ~b, b & ~a
    return (da & -da) < (db & -db)


def unrank_lex(rank: int, X: tuple[int, int], k: int) -> int:
    """The rank-th (0-based) k-subset of the interval X in lex order, as a mask."""
    lo, hi = X
    size = hi - lo + 1
    if not 0 <= rank < binom(size, k):
        raise ParameterError(f"rank {rank} out of range for C({size}, {k})")
    m = 0
    x = lo
    need = k
    while need:
        # sets whose smallest remaining element is x
        with_x = binom(hi - x, need - 1)
        if rank < with_x:
            m |= 1 << (x - 1)
            need -= 1
        else:
            rank -= with_x
        x += 1
    return m


def rank_lex(s, X: tuple[int, int]) -> int:
    """Inverse of :func:`unrank_lex`."""
    lo, hi = X
    els = elements_of(s.bits if isinstance(s, KSubset) else s)
    if any(not lo <= e <= hi for e in els):
        raise ParameterError(f"{els} is not inside [{lo}, {hi}]")
    rank, prev, need = 0, lo, len(els)
    for e in els:
        for skipped in range(prev, e):
            rank += binom(hi - skipped, need - 1)
        prev, need = e + 1, need - 1
    return rank


def lex_family(m: int, X: tuple[int, int], k: int, n: Optional[int] = None) -> SetFamily:
    """First m k-subsets of the interval X = (lo, hi) in lex order."""
    lo, hi = X
    n = hi if n is None else n
    if not 1 <= lo <= hi <= n:
        raise ParameterError(f"interval [{lo}, {hi}] not inside [1, {n}]")
    total = binom(hi - lo + 1, k)
    if not 1 <= m <= total:
        raise ParameterError(f"m={m} outside [1, {total}]")
    params = Params(n, k)
    return SetFamily.from_masks(params, (unrank_lex(i, X, k) for i in range(m)))


def complement_family(f: SetFamily) -> SetFamily:
    """Complements of the k-sets that are NOT in f, an (n-k)-uniform family."""
    present = set(f.masks)
    full = f.params.full_mask
    params = Params(f.n, f.n - f.k)
    return SetFamily.from_masks(params, (full ^ m for m in all_ksets(f.params) if m not in present))


def complements(f: SetFamily) -> SetFamily:
    """Complements of the members of f."""
    full = f.params.full_mask
    return SetFamily.from_masks(Params(f.n, f.n - f.k), (full ^ m for m in f.masks))

"""Structure of 3-uniform almost-intersecting families around a fixed disjoint pair.

Everything is stated for the standard pair P = {1,2,3}, Q = {4,5,6}; use
:func:`relabel_standard` to move an arbitrary disjoint pair there. A *cell*
is a couple (a, b) with a in {1,2,3} and b in {4,5,6}. Its D-set collects
the outside elements c in [7, n] with {a, b, c} in the family.

Every member other than P and Q meets both P and Q, so it has at most one
element outside [6] and contains at least one cell. The predicates below
check the further consequences of the "at most one disjoint partner" rule;
:func:`prune_rules` turns them into forced exclusions for a search that has
committed part of a family.
"""
from __future__ import annotations

from itertools import combinations, permutations
from typing import Iterable

from .errors import ParameterError, UnsupportedError
from .family import SetFamily, apply_permutation, elements_of, mask_of

STANDARD_P = mask_of((1, 2, 3))
STANDARD_Q = mask_of((4, 5, 6))
INNER = STANDARD_P | STANDARD_Q
CELLS = [(a, b) for a in (1, 2, 3) for b in (4, 5, 6)]
# the six perfect matchings between {1,2,3} and {4,5,6}
MATCHINGS = [tuple(zip((1, 2, 3), perm)) for perm in permutations((4, 5, 6))]

RULES = ("same_singleton", "heavy_cell_matching", "heavy_cell_cover", "double_cell_inside")


def _require_k3(f: SetFamily) -> None:
    if f.k != 3:
        raise UnsupportedError(f"only defined for k = 3, got k = {f.k}")
    if f.n < 6:
        raise ParameterError("need n >= 6 to hold the standard pair")


def relabel_standard(f: SetFamily, pair: tuple[int, int]) -> tuple[SetFamily, tuple[int, ...]]:
    """Relabel so that the disjoint pair becomes ({1,2,3}, {4,5,6}).

    Elements of each pair member keep their relative order; the remaining
    elements go to 7..n in increasing order. Returns the new family and the
    permutation used (``perm[i - 1]`` is the new name of ``i``).
    """
    _require_k3(f)
    p, q = pair
    if p & q or p not in f.masks or q not in f.masks:
        raise ParameterError("pair must be two disjoint members of the family")
    rest = [x for x in range(1, f.n + 1) if not (p | q) >> (x - 1) & 1]
    order = [*elements_of(p), *elements_of(q), *rest]
    perm = [0] * f.n
    for new, old in enumerate(order, start=1):
        perm[old - 1] = new
    return apply_permutation(f, perm), tuple(perm)


def _require_standard(f: SetFamily) -> None:
    _require_k3(f)
    ms = set(f.masks)
    if STANDARD_P not in ms or STANDARD_Q not in ms:
        raise ParameterError("family must contain {1,2,3} and {4,5,6}; relabel first")


def d_sets(f: SetFamily, pair: tuple[int, int], a: int, b: int) -> frozenset[int]:
    """Outside elements c >= 7 such that {a, b, c} is a member."""
    _require_k3(f)
    if tuple(pair) != (STANDARD_P, STANDARD_Q):
        raise ParameterError("pair must be the standard pair; use relabel_standard")
    if not (1 <= a <= 3 and 4 <= b <= 6):
        raise ParameterError(f"cell ({a}, {b}) needs a in [1,3], b in [4,6]")
    return _d_sets(f.masks)[(a, b)]


def _d_sets(masks: Iterable[int]) -> dict[tuple[int, int], frozenset[int]]:
    acc: dict[tuple[int, int], set[int]] = {cell: set() for cell in CELLS}
    for m in masks:
        out = m & ~INNER
        if out and out & (out - 1) == 0:
            inner = elements_of(m & INNER)
            if len(inner) == 2 and inner[0] <= 3 < inner[1]:
                acc[(inner[0], inner[1])].add(out.bit_length())
    return {cell: frozenset(s) for cell, s in acc.items()}


def cell_grid(f: SetFamily) -> dict[tuple[int, int], frozenset[int]]:
    """All nine D-sets of a family containing the standard pair."""
    _require_standard(f)
    return _d_sets(f.masks)


def _crossing(x: tuple[int, int], y: tuple[int, int]) -> bool:
    return x[0] != y[0] and x[1] != y[1]


def _third(x: tuple[int, int], y: tuple[int, int]) -> tuple[int, int]:
    return ({1, 2, 3} - {x[0], y[0]}).pop(), ({4, 5, 6} - {x[1], y[1]}).pop()


# -- properties every almost-intersecting family with the standard pair has --


def meeting_violations(f: SetFamily) -> list[tuple[int, ...]]:
    """Members besides P, Q with two outside elements or containing no cell."""
    _require_standard(f)
    bad = []
    for m in f.masks:
        if m in (STANDARD_P, STANDARD_Q):
            continue
        if (m & ~INNER).bit_count() > 1 or not (m & STANDARD_P and m & STANDARD_Q):
            bad.append(elements_of(m))
    return bad


def same_singleton_violations(f: SetFamily) -> list[tuple]:
    """Perfect matchings whose three D-sets are non-empty but not one common singleton."""
    d = cell_grid(f)
    bad = []
    for match in MATCHINGS:
        sets = [d[c] for c in match]
        if all(sets) and not (len(sets[0]) == 1 and sets[0] == sets[1] == sets[2]):
            bad.append(match)
    return bad


def heavy_cell_matching_violations(f: SetFamily) -> list[tuple]:
    """Cells with |D| >= 3 next to a crossing cell with non-empty D."""
    d = cell_grid(f)
    return [(x, y) for x in CELLS for y in CELLS
            if _crossing(x, y) and len(d[x]) >= 3 and d[y]]


def heavy_cell_cover_violations(f: SetFamily) -> list[tuple]:
    """Cells with |D| >= 3 and a member avoiding both coordinates of the cell."""
    d = cell_grid(f)
    bad = []
    for (a, b), ds in d.items():
        if len(ds) >= 3:
            ab = mask_of((a, b))
            bad.extend(((a, b), elements_of(m)) for m in f.masks if not m & ab)
    return bad


def double_cell_inside_violations(f: SetFamily) -> list[tuple]:
    """Cells with |D| >= 2 while [6] minus the cell still contains a member."""
    d = cell_grid(f)
    ms = set(f.masks)
    bad = []
    for (a, b), ds in d.items():
        if len(ds) >= 2:
            rest = [x for x in range(1, 7) if x not in (a, b)]
            bad.extend(((a, b), e) for e in combinations(rest, 3) if mask_of(e) in ms)
    return bad


def all_violations(f: SetFamily) -> dict[str, list]:
    return {
        "pair_meeting": meeting_violations(f),
        "same_singleton": same_singleton_violations(f),
        "heavy_cell_matching": heavy_cell_matching_violations(f),
        "heavy_cell_cover": heavy_cell_cover_violations(f),
        "double_cell_inside": double_cell_inside_violations(f),
    }


# -- forced exclusions for a partially committed family --------------------


def candidates(n: int) -> list[int]:
    """3-sets of [n] other than P, Q that meet both P and Q, ascending."""
    out = []
    for c in combinations(range(1, n + 1), 3):
        m = mask_of(c)
        if m not in (STANDARD_P, STANDARD_Q) and m & STANDARD_P and m & STANDARD_Q:
            out.append(m)
    return out


def prune_rules(committed: SetFamily) -> dict[str, frozenset[int]]:
    """Candidate sets that no almost-intersecting extension of ``committed`` can contain.

    ``committed`` must contain the standard pair. The D-sets of any extension
    contain those of ``committed``, and every hypothesis used below only
    grows with the D-sets, so each exclusion is safe. Keys are rule names
    from :data:`RULES`; a set may be excluded by several rules.
    """
    _require_standard(committed)
    n = committed.n
    d = _d_sets(committed.masks)
    present = set(committed.masks)
    cand = [m for m in candidates(n) if m not in present]

    def straddling(cell, allowed=None):
        a, b = cell
        return {
            mask_of((a, b, c)) for c in range(7, n + 1)
            if allowed is None or c not in allowed
        }

    out: dict[str, set[int]] = {r: set() for r in RULES}
    for x, y in combinations(CELLS, 2):
        if not _crossing(x, y) or not (d[x] and d[y]):
            continue
        z = _third(x, y)
        if len(d[x]) == 1 and d[x] == d[y]:
            out["same_singleton"] |= straddling(z, allowed=d[x])
        else:
            out["same_singleton"] |= straddling(z)
    for x in CELLS:
        if len(d[x]) >= 3:
            for y in CELLS:
                if _crossing(x, y):
                    out["heavy_cell_matching"] |= straddling(y)
            ab = mask_of(x)
            out["heavy_cell_cover"] |= {m for m in cand if not m & ab}
        if len(d[x]) >= 2:
            rest = [e for e in range(1, 7) if e not in x]
            out["double_cell_inside"] |= {mask_of(e) for e in combinations(rest, 3)}
    keep = set(cand)
    return {r: frozenset(s & keep) for r, s in out.items()}

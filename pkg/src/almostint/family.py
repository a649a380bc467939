"""k-subsets of [n] as bitmasks, immutable families, and intersection predicates.

Element ``i`` of the ground set ``[n] = {1, ..., n}`` is bit ``i - 1`` of a
mask. Families keep their members sorted by the integer value of the mask
(colex order); lexicographic order is a separate comparator in
:mod:`almostint.constructions`.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

from .errors import ParameterError

MAX_N = 64


def mask_of(elements: Iterable[int]) -> int:
    """Bitmask of a collection of 1-based elements."""
    m = 0
    for x in elements:
        m |= 1 << (x - 1)
    return m


def elements_of(mask: int) -> tuple[int, ...]:
    """Sorted 1-based elements of a bitmask."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length())
        mask ^= low
    return tuple(out)


def interval_mask(lo: int, hi: int) -> int:
    """Mask of the interval [lo, hi]; empty if lo > hi."""
    if lo > hi:
        return 0
    return ((1 << (hi - lo + 1)) - 1) << (lo - 1)


@dataclass(frozen=True)
class Params:
    n: int
    k: int

    def __post_init__(self):
        if not (isinstance(self.n, int) and isinstance(self.k, int)):
            raise ParameterError(f"n and k must be integers, got {self.n!r}, {self.k!r}")
        if not 1 <= self.k < self.n <= MAX_N:
            raise ParameterError(f"need 1 <= k < n <= {MAX_N}, got n={self.n}, k={self.k}")

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def check_element(self, x: int) -> None:
        if not (isinstance(x, int) and 1 <= x <= self.n):
            raise ParameterError(f"element {x!r} outside [1, {self.n}]")

    def check_mask(self, bits: int) -> None:
        if bits < 0 or bits >> self.n:
            raise ParameterError(f"mask {bits:#x} has elements outside [1, {self.n}]")
        if bits.bit_count() != self.k:
            raise ParameterError(f"set {elements_of(bits)} does not have size {self.k}")


@dataclass(frozen=True, order=True)
class KSubset:
    """One k-subset of [n]."""

    bits: int
    params: Params

    def __post_init__(self):
        self.params.check_mask(self.bits)

    @classmethod
    def of(cls, elements: Iterable[int], params: Params) -> "KSubset":
        elements = list(elements)
        for x in elements:
            params.check_element(x)
        if len(set(elements)) != len(elements):
            raise ParameterError(f"repeated element in {elements}")
        return cls(mask_of(elements), params)

    def elements(self) -> tuple[int, ...]:
        return elements_of(self.bits)

    def __contains__(self, x: int) -> bool:
        return bool(self.bits >> (x - 1) & 1)

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements())

    def __len__(self) -> int:
        return self.params.k

    def __repr__(self) -> str:
        return "{" + ",".join(map(str, self.elements())) + "}"


@dataclass(frozen=True)
class SetFamily:
    """Deduplicated family of k-subsets, stored in ascending mask order.

    Build instances with :meth:`from_masks` or :meth:`from_sets`; both
    validate, sort and deduplicate.
    """

    params: Params
    masks: tuple[int, ...] = ()

    @classmethod
    def from_masks(cls, params: Params, masks: Iterable[int]) -> "SetFamily":
        uniq = sorted(set(masks))
        for m in uniq:
            params.check_mask(m)
        return cls(params, tuple(uniq))

    @classmethod
    def from_sets(cls, n: int, k: int, sets: Iterable[Iterable[int]]) -> "SetFamily":
        params = Params(n, k)
        return cls.from_masks(params, (KSubset.of(s, params).bits for s in sets))

    @property
    def n(self) -> int:
        return self.params.n

    @property
    def k(self) -> int:
        return self.params.k

    @property
    def members(self) -> tuple[KSubset, ...]:
        return tuple(KSubset(m, self.params) for m in self.masks)

    def sets(self) -> list[tuple[int, ...]]:
        return [elements_of(m) for m in self.masks]

    def __len__(self) -> int:
        return len(self.masks)

    def __iter__(self) -> Iterator[KSubset]:
        return iter(self.members)

    def __contains__(self, s) -> bool:
        bits = s.bits if isinstance(s, KSubset) else mask_of(s)
        return bits in set(self.masks)

    def with_masks(self, masks: Iterable[int]) -> "SetFamily":
        """New family on the same params with the given members added."""
        return SetFamily.from_masks(self.params, (*self.masks, *masks))

    def union(self, other: "SetFamily") -> "SetFamily":
        _same_params(self, other)
        return self.with_masks(other.masks)

    def minus(self, other: "SetFamily") -> "SetFamily":
        _same_params(self, other)
        drop = set(other.masks)
        return SetFamily(self.params, tuple(m for m in self.masks if m not in drop))

    def __repr__(self) -> str:
        body = ", ".join("{" + ",".join(map(str, s)) + "}" for s in self.sets())
        return f"SetFamily(n={self.n}, k={self.k}, [{body}])"


def _same_params(f: SetFamily, g: SetFamily) -> None:
    if f.params != g.params:
        raise ParameterError(f"parameter mismatch: {f.params} vs {g.params}")


def intersects(a: KSubset, b: KSubset) -> bool:
    if a.params != b.params:
        raise ParameterError(f"parameter mismatch: {a.params} vs {b.params}")
    return bool(a.bits & b.bits)


def is_intersecting(f: SetFamily) -> bool:
    ms = f.masks
    for i, a in enumerate(ms):
        for b in ms[i + 1:]:
            if not a & b:
                return False
    return True


def disjoint_partner_counts(f: SetFamily) -> dict[int, int]:
    """Map member index (storage order) to its number of disjoint co-members."""
    ms = f.masks
    counts = dict.fromkeys(range(len(ms)), 0)
    for i, a in enumerate(ms):
        for j in range(i + 1, len(ms)):
            if not a & ms[j]:
                counts[i] += 1
                counts[j] += 1
    return counts


def is_almost_intersecting(f: SetFamily) -> bool:
    counts = disjoint_partner_counts(f).values()
    return max(counts, default=0) == 1


def degree(f: SetFamily, x: int) -> int:
    f.params.check_element(x)
    bit = 1 << (x - 1)
    return sum(1 for m in f.masks if m & bit)


def degrees(f: SetFamily) -> list[int]:
    """Degrees of elements 1..n as a list indexed from 0."""
    out = [0] * f.n
    for m in f.masks:
        for x in elements_of(m):
            out[x - 1] += 1
    return out


def max_degree(f: SetFamily) -> tuple[int, int]:
    """Smallest element of maximum degree, and that degree."""
    degs = degrees(f)
    best = max(degs)
    return degs.index(best) + 1, best


def link(f: SetFamily, x: int) -> SetFamily:
    """F(x): members through x with x removed, as a (k-1)-uniform family."""
    f.params.check_element(x)
    if f.k < 2:
        raise ParameterError("link of a 1-uniform family would be 0-uniform")
    bit = 1 << (x - 1)
    return SetFamily.from_masks(Params(f.n, f.k - 1), (m ^ bit for m in f.masks if m & bit))


def without(f: SetFamily, x: int) -> SetFamily:
    """F(x-bar): members avoiding x."""
    f.params.check_element(x)
    bit = 1 << (x - 1)
    return SetFamily(f.params, tuple(m for m in f.masks if not m & bit))


def link_avoiding(f: SetFamily, x: int, y: int) -> SetFamily:
    """F(x, y-bar): members through x and avoiding y, with x removed."""
    f.params.check_element(y)
    if x == y:
        raise ParameterError("link_avoiding needs two distinct elements")
    return link(without(f, y), x)


def apply_permutation(f: SetFamily, perm: Sequence[int]) -> SetFamily:
    """Image of f under the element map i -> perm[i - 1]."""
    if sorted(perm) != list(range(1, f.n + 1)):
        raise ParameterError(f"not a permutation of [1, {f.n}]: {perm}")
    return SetFamily.from_masks(
        f.params, (mask_of(perm[x - 1] for x in elements_of(m)) for m in f.masks)
    )


def _pair_degrees(f: SetFamily) -> list[list[int]]:
    n = f.n
    pd = [[0] * n for _ in range(n)]
    for m in f.masks:
        els = [x - 1 for x in elements_of(m)]
        for i in els:
            for j in els:
                pd[i][j] += 1
    return pd


def family_isomorphic(f: SetFamily, g: SetFamily) -> Optional[tuple[int, ...]]:
    """Find an element permutation carrying f onto g, or return None.

    Backtracks over element assignments, pruning by element degree, by the
    sorted pair-degree profile of each element, by pair degrees against
    already-assigned elements, and by requiring every member that becomes
    fully assigned to land in the other family.
    """
    if f.params != g.params or len(f) != len(g):
        return None
    if sorted(disjoint_partner_counts(f).values()) != sorted(disjoint_partner_counts(g).values()):
        return None
    n = f.n
    pf, pg = _pair_degrees(f), _pair_degrees(g)
    prof_f = [(pf[i][i], tuple(sorted(pf[i]))) for i in range(n)]
    prof_g = [(pg[i][i], tuple(sorted(pg[i]))) for i in range(n)]
    if sorted(prof_f) != sorted(prof_g):
        return None

    order = sorted(range(n), key=lambda i: (-prof_f[i][0], i))
    position = {x: t for t, x in enumerate(order)}
    # members of f checked once their last element (in assignment order) is placed
    closing_f: list[list[int]] = [[] for _ in range(n)]
    for m in f.masks:
        last = max(position[x - 1] for x in elements_of(m))
        closing_f[last].append(m)
    g_set = set(g.masks)
    f_set = set(f.masks)
    g_by_elem: list[list[int]] = [[] for _ in range(n)]
    for m in g.masks:
        for y in elements_of(m):
            g_by_elem[y - 1].append(m)

    image = [-1] * n
    used_img = 0

    def image_mask(m: int) -> int:
        return mask_of(image[x - 1] + 1 for x in elements_of(m))

    def backtrack(t: int) -> bool:
        nonlocal used_img
        if t == n:
            return True
        x = order[t]
        for y in range(n):
            if used_img >> y & 1 or prof_g[y] != prof_f[x]:
                continue
            if any(pg[y][image[z]] != pf[x][z] for z in order[:t]):
                continue
            image[x] = y
            used_img |= 1 << y
            ok = all(image_mask(m) in g_set for m in closing_f[t])
            if ok:
                # members of g through y lying inside the image so far need a preimage
                inv = {image[z]: z for z in order[: t + 1]}
                for m in g_by_elem[y]:
                    if m & ~used_img == 0:
                        if mask_of(inv[e - 1] + 1 for e in elements_of(m)) not in f_set:
                            ok = False
                            break
            if ok and backtrack(t + 1):
                return True
            used_img &= ~(1 << y)
            image[x] = -1
        return False

    if not backtrack(0):
        return None
    return tuple(i + 1 for i in image)


def family_to_json(f: SetFamily) -> dict:
    return {"n": f.n, "k": f.k, "sets": [list(s) for s in f.sets()]}


def family_from_json(obj: dict) -> SetFamily:
    """Parse the family JSON object, rejecting anything malformed."""
    try:
        n, k, sets = obj["n"], obj["k"], obj["sets"]
    except (KeyError, TypeError) as exc:
        raise ParameterError(f"family JSON needs 'n', 'k' and 'sets': {exc}") from None
    params = Params(n, k)
    if not isinstance(sets, list):
        raise ParameterError("'sets' must be a list")
    masks = []
    for s in sets:
        if not isinstance(s, list) or len(s) != k:
            raise ParameterError(f"set {s!r} does not have size {k}")
        if any(not isinstance(x, int) or isinstance(x, bool) for x in s):
            raise ParameterError(f"set {s!r} has non-integer elements")
        if any(a >= b for a, b in zip(s, s[1:])):
            raise ParameterError(f"set {s!r} is not strictly increasing")
        for x in s:
            params.check_element(x)
        masks.append(mask_of(s))
    if len(set(masks)) != len(masks):
        raise ParameterError("duplicate sets in family JSON")
    return SetFamily.from_masks(params, masks)


def dumps(f: SetFamily) -> str:
    return json.dumps(family_to_json(f))


def loads(text: str) -> SetFamily:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParameterError(f"invalid JSON: {exc}") from None
    return family_from_json(obj)

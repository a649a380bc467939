"""Canonical decomposition of an almost-intersecting family into core and disjoint pairs."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator

from .errors import NotAlmostIntersectingError, ResourceError
from .family import SetFamily, elements_of, is_intersecting

MAX_TAIL_PAIRS = 20


@dataclass(frozen=True)
class CanonicalPartition:
    """Intersecting core plus disjoint pairs (P_i, Q_i), P_i < Q_i as masks, pairs sorted."""

    core: SetFamily
    pairs: tuple[tuple[int, int], ...]

    @property
    def ell(self) -> int:
        return len(self.pairs)

    def family(self) -> SetFamily:
        return self.core.with_masks(m for pair in self.pairs for m in pair)

    def to_json(self) -> dict:
        return {
            "core": [list(s) for s in self.core.sets()],
            "pairs": [[list(elements_of(p)), list(elements_of(q))] for p, q in self.pairs],
            "ell": self.ell,
        }


def canonical_partition(f: SetFamily) -> CanonicalPartition:
    """Split f into members with no disjoint co-member and matched disjoint couples.

    Intersecting families are accepted and give an empty pair list.
    """
    ms = f.masks
    partner: dict[int, list[int]] = {m: [] for m in ms}
    for i, a in enumerate(ms):
        for b in ms[i + 1:]:
            if not a & b:
                partner[a].append(b)
                partner[b].append(a)
    bad = [m for m, ps in partner.items() if len(ps) > 1]
    if bad:
        raise NotAlmostIntersectingError(
            f"{elements_of(bad[0])} is disjoint from {len(partner[bad[0]])} members"
        )
    core = tuple(m for m in ms if not partner[m])
    pairs = tuple(sorted((a, ps[0]) for a, ps in partner.items() if ps and a < ps[0]))
    return CanonicalPartition(SetFamily(f.params, core), pairs)


def ell(f: SetFamily) -> int:
    return canonical_partition(f).ell


def full_tails(p: CanonicalPartition) -> Iterator[SetFamily]:
    """Lazily yield all 2**ell choices of one member from each pair."""
    if p.ell > MAX_TAIL_PAIRS:
        raise ResourceError(f"{2 ** p.ell} tails requested; limit is 2**{MAX_TAIL_PAIRS}")
    for choice in product((0, 1), repeat=p.ell):
        tail = SetFamily.from_masks(p.core.params, (pair[c] for pair, c in zip(p.pairs, choice)))
        if __debug__:
            assert is_intersecting(p.core.union(tail)), "core plus tail must be intersecting"
        yield tail


def tail_avoiding(p: CanonicalPartition, x: int) -> SetFamily:
    """Full tail picking from each pair the member without x (the first one on ties)."""
    p.core.params.check_element(x)
    bit = 1 << (x - 1)
    picks = [q if a & bit else a for a, q in p.pairs]
    return SetFamily.from_masks(p.core.params, picks)

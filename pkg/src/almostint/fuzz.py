"""Seeded random families for property tests and the CLI fuzz suite."""
from __future__ import annotations

import random
from itertools import combinations
from typing import Optional

from .errors import ParameterError
from .family import Params, SetFamily, mask_of


def random_family(rng: random.Random, n: int, k: int, size: int) -> SetFamily:
    """Uniformly chosen ``size`` distinct k-subsets of [n]; no structure imposed."""
    params = Params(n, k)
    pool = [mask_of(c) for c in combinations(range(1, n + 1), k)]
    return SetFamily.from_masks(params, rng.sample(pool, min(size, len(pool))))


def random_almost_intersecting(rng: random.Random, n: int, k: int,
                               density: Optional[float] = None,
                               pair: Optional[tuple[int, int]] = None) -> SetFamily:
    """Random almost-intersecting family built greedily around a disjoint pair.

    Starts from ``pair`` (a random disjoint pair if omitted), then visits the
    remaining k-sets in random order and keeps each with probability
    ``density`` whenever doing so leaves every member with at most one
    disjoint partner. The result always contains the starting pair.
    """
    if n < 2 * k:
        raise ParameterError(f"no disjoint pair exists for n={n} < 2k={2 * k}")
    params = Params(n, k)
    if pair is None:
        elems = rng.sample(range(1, n + 1), 2 * k)
        pair = (mask_of(elems[:k]), mask_of(elems[k:]))
    p, q = pair
    if p & q or p.bit_count() != k or q.bit_count() != k:
        raise ParameterError("starting pair must be two disjoint k-sets")
    if density is None:
        density = rng.random()
    chosen = [p, q]
    partners = [1, 1]
    pool = [mask_of(c) for c in combinations(range(1, n + 1), k)]
    rng.shuffle(pool)
    for s in pool:
        if s in (p, q) or rng.random() >= density:
            continue
        hits = [i for i, c in enumerate(chosen) if not c & s]
        if len(hits) > 1 or (hits and partners[hits[0]]):
            continue
        for i in hits:
            partners[i] += 1
        chosen.append(s)
        partners.append(len(hits))
    return SetFamily.from_masks(params, chosen)

"""Shadows, cross-intersecting families and lex-compression checks."""
from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from .bounds import binom
from .constructions import lex_family
from .errors import ParameterError
from .family import Params, SetFamily, elements_of, interval_mask, mask_of


@dataclass(frozen=True)
class CrossPair:
    fam_a: SetFamily
    fam_b: SetFamily
    X: tuple[int, int]

    def __post_init__(self):
        lo, hi = self.X
        if self.fam_a.n != self.fam_b.n:
            raise ParameterError("families live on different ground sets")
        if self.fam_a.k + self.fam_b.k > hi - lo + 1:
            raise ParameterError(f"a + b exceeds |X| = {hi - lo + 1}")
        inside = interval_mask(lo, hi)
        if any(m & ~inside for m in (*self.fam_a.masks, *self.fam_b.masks)):
            raise ParameterError(f"member outside X = [{lo}, {hi}]")


def is_cross_intersecting(a: SetFamily | CrossPair, b: Optional[SetFamily] = None) -> bool:
    """Every member of the first family meets every member of the second."""
    if isinstance(a, CrossPair):
        a, b = a.fam_a, a.fam_b
    bs = b.masks
    return all(x & y for x in a.masks for y in bs)


def shadow(f: SetFamily, b: int) -> SetFamily:
    """All b-sets contained in at least one member of f."""
    if not 1 <= b <= f.k:
        raise ParameterError(f"shadow size b={b} outside [1, {f.k}]")
    out = set()
    for m in f.masks:
        for sub in combinations(elements_of(m), b):
            out.add(mask_of(sub))
    return SetFamily.from_masks(Params(f.n, b), out)


def _sets_of_interval(X: tuple[int, int], size: int) -> list[int]:
    lo, hi = X
    return [mask_of(c) for c in combinations(range(lo, hi + 1), size)]


def max_cross_partner(f: SetFamily, b: int, X: Optional[tuple[int, int]] = None) -> SetFamily:
    """All b-subsets of X meeting every member of f (the largest cross-intersecting partner)."""
    X = (1, f.n) if X is None else X
    lo, hi = X
    if not 1 <= lo <= hi <= f.n or not 1 <= b <= hi - lo + 1:
        raise ParameterError(f"bad interval {X} or size {b}")
    ms = f.masks
    return SetFamily.from_masks(
        Params(f.n, b), (c for c in _sets_of_interval(X, b) if all(c & m for m in ms))
    )


def lex_compress_check(size_a: int, size_b: int, X: tuple[int, int], a: int, b: int) -> bool:
    """Whether the first size_a lex a-sets and first size_b lex b-sets of X cross-intersect."""
    lo, hi = X
    width = hi - lo + 1
    if a + b > width:
        raise ParameterError(f"a + b = {a + b} exceeds |X| = {width}")
    if not (0 <= size_a <= binom(width, a) and 0 <= size_b <= binom(width, b)):
        raise ParameterError("sizes exceed the number of available sets")
    if size_a == 0 or size_b == 0:
        return True
    fa = lex_family(size_a, X, a, n=hi)
    fb = lex_family(size_b, X, b, n=hi)
    return is_cross_intersecting(fa, fb)


def random_cross_pair(rng: random.Random, width: int, a: int, b: int) -> CrossPair:
    """Random cross-intersecting pair on X = [1, width] with both families non-empty.

    A is a random subfamily of the a-sets meeting a random anchor b-set, so
    its maximum partner is non-empty; B is a random non-empty subfamily of
    that partner.
    """
    X = (1, width)
    anchor = mask_of(rng.sample(range(1, width + 1), b))
    pool = [m for m in _sets_of_interval(X, a) if m & anchor]
    density = rng.random()
    fam_a = [m for m in pool if rng.random() < density] or [rng.choice(pool)]
    A = SetFamily.from_masks(Params(width, a), fam_a)
    partner = max_cross_partner(A, b, X).masks
    density = rng.random()
    fam_b = [m for m in partner if rng.random() < density] or [rng.choice(partner)]
    return CrossPair(A, SetFamily.from_masks(Params(width, b), fam_b), X)


def compression_trial(seed: int, width: int, a: int, b: int) -> bool:
    """One seeded trial: random cross pair, then the lex pair of the same sizes."""
    p = random_cross_pair(random.Random(seed), width, a, b)
    assert is_cross_intersecting(p)
    return lex_compress_check(len(p.fam_a), len(p.fam_b), p.X, a, b)


def compression_suite(width: int, a: int, b: int, trials: int = 1000, seed: int = 0,
                      jobs: int = 1) -> int:
    """Number of trials (out of ``trials``) in which lex compression kept cross-intersection.

    Trial i uses seed ``seed * 1_000_003 + i`` so the result does not depend on ``jobs``.
    """
    seeds = [seed * 1_000_003 + i for i in range(trials)]
    if jobs <= 1:
        return sum(compression_trial(s, width, a, b) for s in seeds)
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return sum(ex.map(compression_trial, seeds, [width] * trials, [a] * trials, [b] * trials,
                          chunksize=max(1, trials // (4 * jobs))))

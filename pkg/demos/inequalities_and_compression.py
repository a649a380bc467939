"""Exact checks of the binomial inequalities, and lex compression of cross-intersecting pairs.

Run: python3 demos/inequalities_and_compression.py
"""
import random

from almostint.bounds import LEMMAS, check_lemma, cor25_bound, cor26_bound, summarize
from almostint.constructions import lex_family
from almostint.kruskal_katona import (
    compression_suite,
    is_cross_intersecting,
    lex_compress_check,
    max_cross_partner,
    random_cross_pair,
)

# every inequality is decided with integers; out-of-domain points are listed, never failed
for lemma in LEMMAS:
    print(f"check_lemma({lemma!r}): {summarize(check_lemma(lemma))}")

# a cross-intersecting pair, then the lex pair of the same sizes
pair = random_cross_pair(random.Random(1), 9, 3, 3)
print(f"\nrandom pair: |A|={len(pair.fam_a)}, |B|={len(pair.fam_b)}, "
      f"cross-intersecting={is_cross_intersecting(pair)}")
print("lex pair of the same sizes cross-intersects:",
      lex_compress_check(len(pair.fam_a), len(pair.fam_b), pair.X, 3, 3))
print("seeded suite on |X|=9, a=b=3:", compression_suite(9, 3, 3, trials=300), "/ 300")

# the threshold A and its largest partner
n, k, r = 10, 4, 3
thr, cap = cor25_bound(n, k, r)
a = lex_family(thr, (2, n), k - 1, n=n)
print(f"\n|A| = {thr} lex (k-1)-sets of [2,{n}] leave a partner of size "
      f"{len(max_cross_partner(a, k, (2, n)))} (cap {cap})")
for m in range(1, k + 3):
    b = lex_family(m, (2, n), k, n=n)
    size = len(max_cross_partner(b, k - 1, (2, n)))
    print(f"|B| = {m}: largest partner {size}, cap once |B| >= k is {cor26_bound(n, k)}")

"""Exhaustive search for the largest almost-intersecting 3-uniform family on [13].

The optimum should be 32, reached by B+ alone (up to relabelling).
Run: python3 demos/flagship_search.py
"""
from almostint import Params, SearchProblem, b_plus, family_isomorphic, max_almost_intersecting
from almostint.search import local_maximality_check

out = max_almost_intersecting(SearchProblem(Params(13, 3)))
print(f"optimum {out.optimum}, exhausted={out.exhausted}, {out.stats.nodes} nodes "
      f"in {out.stats.wall_time:.2f}s")
print("prune counters:", dict(out.stats.prunes))
print(f"{out.witness_count} optimal families found, {len(out.witnesses)} up to isomorphism")

w = out.witnesses[0]
print("witness isomorphic to B+:", family_isomorphic(w, b_plus(13, 3)) is not None)
print("sets that could still be added to B+:", local_maximality_check(b_plus(13, 3)))

# the same search with every structural k=3 rule switched off lands on the same answer
plain = max_almost_intersecting(SearchProblem(Params(13, 3), k3_rules=False))
print(f"without k=3 rules: optimum {plain.optimum}, {plain.stats.nodes} nodes")

# a small sweep over n; compare with 3n - 7
for n in range(7, 17):
    o = max_almost_intersecting(SearchProblem(Params(n, 3)))
    print(f"n={n:2d}: max {o.optimum:3d}  3n-7={3 * n - 7:3d}  classes={len(o.witnesses)}")

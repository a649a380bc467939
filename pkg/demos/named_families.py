"""Build the named families and watch their sizes against the closed forms.

Run: python3 demos/named_families.py
"""
from almostint import b_plus, b_r, canonical_partition, is_almost_intersecting, is_intersecting
from almostint.bounds import size_b_plus, size_b_r
from almostint.family import max_degree

n, k = 13, 3

# B_r grows with r once r >= 4; B_3 and B_4 tie
for r in range(3, k + 2):
    f = b_r(n, k, r)
    x, deg = max_degree(f)
    print(f"B_{r}({n},{k}): {len(f)} sets (formula {size_b_r(n, k, r)}), "
          f"intersecting={is_intersecting(f)}, max degree {deg} at {x}")

# one extra set through 1 breaks intersection, but only once
plus = b_plus(n, k)
print(f"\nB+({n},{k}): {len(plus)} sets, formula {size_b_plus(n, k)} = 3n - 7 = {3 * n - 7}")
print("almost intersecting:", is_almost_intersecting(plus))

part = canonical_partition(plus)
pair = part.to_json()["pairs"][0]
print(f"core has {len(part.core)} sets; the lone disjoint pair is {pair[0]} / {pair[1]}")

"""Building k-regular maps by projecting a Veronese map.

All monomials of degree <= k-1 in m variables give a k-regular map (the
Veronese), but with many coordinates.  A random linear projection to N+1
coordinates usually stays k-regular near a point as long as N is at least
m(k-1)+1 or so.  This script builds a few and then asks how far from the
origin the first one still passes.

Run:  python3 demos/construct_pipeline.py
"""

import warnings
from fractions import Fraction
from math import comb

from kregular import check_regularity, construct_k_regular
from kregular.regularity import DomainBall

for m, k, n in [(1, 4, 3), (2, 3, 4), (2, 4, 6)]:
    c = construct_k_regular(m, k, n, seed=0, trials=150)
    print(f"m={m} k={k}: {comb(m + k - 1, k - 1)} Veronese coordinates -> {n + 1}, "
          f"attempt {c.attempts}, {c.report.verdict}")

c = construct_k_regular(2, 4, 6, seed=0, trials=150)
print("\nfirst two components of the (2, 4, 6) map:")
for line in c.map.formatted()[1:3]:
    print("  ", line[:100] + ("..." if len(line) > 100 else ""))

# The construction is verified on a small ball; widen it until something breaks.
print("\nradius sweep for the same map:")
for r in ["1/8", "1/2", "2", "8"]:
    rep = check_regularity(c.map, 4, DomainBall.unit(2, Fraction(r)), budget=150, seed=0, stop_at_first=True)
    print(f"  radius {r:>4}: {rep.verdict}")

# Too few coordinates.  N = 4 is below the known lower bound, so the map
# cannot be 4-regular, and a warning says so.  The checker still reports
# PASSED: for a generic projection the bad 4-point configurations form a
# codimension-2 set, which neither random nor structured rational points hit.
# A PASSED verdict is evidence, never a proof.
with warnings.catch_warnings(record=True) as caught:
    warnings.simplefilter("always")
    low = construct_k_regular(2, 4, 4, budget=3, trials=100)
print(f"\nN=4 for m=2, k=4: checker verdict {low.report.verdict}")
for w in caught:
    print(f"  warning: {w.message}")

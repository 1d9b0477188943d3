"""Dimensions of secant varieties of Veronese embeddings.

sigma_k(v_d(P^m)) usually has the expected dimension min(km+k-1, C(m+d,d)-1).
The exceptions form a short list: quadrics (d=2, 2 <= k <= m) and four
sporadic cases.  The Terracini oracle measures the dimension as the rank of
stacked tangent spaces at random points, modulo a large prime.

Run:  python3 demos/secant_dimensions.py
"""

from math import comb

from kregular import ah_dimension, terracini_dimension
from kregular.secant import is_exceptional, strongly_regular_feasible

print(f"{'(m,d,k)':<12}{'expected':>9}{'oracle':>8}  note")
for m, d, k in [(2, 3, 2), (3, 3, 2), (2, 2, 2), (3, 2, 3), (2, 4, 5), (3, 4, 9), (4, 3, 7), (4, 4, 14)]:
    r = ah_dimension(m, d, k)
    note = "exceptional" if is_exceptional(m, d, k) else ""
    print(f"{str((m, d, k)):<12}{r.expected_dim:>9}{terracini_dimension(m, d, k):>8}  {note}")

# Scan a range and count disagreements with the expected value.
checked = surprises = 0
for m in range(1, 5):
    for d in range(2, 7):
        if comb(m + d, d) > 150:
            continue
        for k in range(2, d + 2):
            checked += 1
            agrees = terracini_dimension(m, d, k) == ah_dimension(m, d, k).expected_dim
            surprises += agrees == is_exceptional(m, d, k)
print(f"\n{checked} cases scanned, {surprises} disagree with the exceptional list")

# When does a projection of v_{k-1} stay regular on whole schemes, not just points?
print()
for m, k, n in [(2, 4, 8), (2, 4, 9), (2, 5, 12), (2, 5, 13), (3, 3, 8)]:
    ok, why = strongly_regular_feasible(m, k, n)
    print(f"m={m} k={k} N={n}: {ok} ({why})")

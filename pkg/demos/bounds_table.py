"""Lower and upper bounds for the least N admitting a k-regular map C^m -> C^N.

Lower bounds come from topology (prime k, prime-power m) and from the
observation that k-regular maps are (k-1)-regular.  Upper bounds come from
the projected Veronese construction.  Starred cells are settled.

Run:  python3 demos/bounds_table.py
"""

from kregular.bounds import format_table, hypersurface_bound, lower_bound_min_N, table, upper_bound_min_N

print(format_table(table(10, [1, 2, 3, 4])))

print("\nwhere the numbers come from, m = 3:")
for k in range(2, 11):
    lo, hi = lower_bound_min_N(3, k), upper_bound_min_N(3, k)
    print(f"  k={k:<3} lower {lo.value:>3} [{lo.tag}]   upper {hi.value:>3} [{hi.tag}]")

print("\nembedding a 4-manifold in R^5, then k-regularly in R^N:")
print("  ", {k: hypersurface_bound(4, 1, k) for k in range(3, 12)})

"""Checking k-regularity of small explicit maps.

A map is k-regular when the images of any k distinct points are linearly
independent.  The checker looks for a rank drop in the k x N matrix of
values; since every rank is exact, a drop is a proof, while a clean run is
only evidence.

Run:  python3 demos/verify_examples.py
"""

from kregular import check_regularity, paper_example, verify_counterexample
from kregular.regularity import DomainBall

# The moment curve (1, t, t^2, t^3): four points give a Vandermonde matrix.
vdm = paper_example("vandermonde-4")
rep = check_regularity(vdm, 4, budget=200)
print(f"{vdm.name}: {rep.verdict} after", sum(s.trials for s in rep.strategies), "trials")

# One point more than the dimension always fails, and the failure comes with a witness.
rep = check_regularity(vdm, 5, budget=10, stop_at_first=True)
cex = rep.counterexample
print(f"{vdm.name} at k=5: {rep.verdict} ({cex.strategy} trial {cex.trial})")

# Pure powers of s and t, with no mixed monomials, are not 4-regular: every
# coordinate depends on one variable only, so the corners of any axis-parallel
# rectangle satisfy f(a) - f(b) - f(c) + f(d) = 0.
mono = paper_example("monomial-nonreg-2-7")
rep = check_regularity(mono, 4, budget=10, strategies=("grid",), stop_at_first=True)
cex = rep.counterexample
print("\nmonomial projection components:", ", ".join(mono.formatted()))
print("rectangle corners:", [tuple(str(x) for x in p) for p in cex.points])
print("kernel vector:", [str(x) for x in cex.kernel_vector])
print("certificate re-checked exactly:", verify_counterexample(mono, cex))

# Seven coordinates suffice once mixed terms are allowed.
fix = paper_example("fourreg-2-7")
rep = check_regularity(fix, 4, budget=300, seed=1)
print(f"\n{', '.join(fix.formatted())}: {rep.verdict}")
for s in rep.strategies:
    print(f"  {s.name:<8} {s.trials:>4} trials, {s.failures} failures")

# The three-variable example is only claimed near the origin.
loc = paper_example("fourreg-3-10")
rep = check_regularity(loc, 4, DomainBall.unit(3, "1/8"), budget=200)
print(f"\nfourreg-3-10 on the ball of radius 1/8: {rep.verdict}")

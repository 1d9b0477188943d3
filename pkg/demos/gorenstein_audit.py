"""Apolar algebras and a dimension count for Gorenstein schemes at a point.

A polynomial f determines the algebra of differential operators modulo
those that kill f.  Its Hilbert function is read off catalecticant ranks.
The audit enumerates symmetric decompositions of every possible Hilbert
function of length k and compares each family's dimension with (k-1)(m-1),
the dimension of the curvilinear locus.

Run:  python3 demos/gorenstein_audit.py
"""

from kregular import annihilator_generators, apolar_profile, negligibility_audit
from kregular.gorenstein import enumerate_decompositions, operator_names
from kregular.poly import format_poly, parse_poly

xy = ("x", "y")
for text in ["x^3 + y^3", "x*y", "x^2 + y^2", "x^4"]:
    f = parse_poly(text, xy)
    prof = apolar_profile(f)
    gens = [format_poly(g, operator_names(xy)) for g in annihilator_generators(f)]
    print(f"{text:<10} H={list(prof.hilbert_function)} length {prof.length}  ann: {', '.join(gens)}")

g = parse_poly("x^3 + x*y", xy)
p = apolar_profile(g)
print(f"x^3 + x*y  (not homogeneous) length {p.length}, embedding dimension {p.embedding_dim}")

print("\nsymmetric decompositions of length 6:")
for d in enumerate_decompositions(6):
    print("  H =", list(d.hilbert_function), " rows:", [list(r) for r in d.rows])

print("\naudit verdicts, k = 2..10 (rows) by m = 1..6 (columns):")
for k in range(2, 11):
    print(f"  k={k:<3}", " ".join(f"{negligibility_audit(k, m).verdict[:4]:>5}" for m in range(1, 7)))

r = negligibility_audit(16, 7)
w = [c for c in r.witnesses if c.exact][0]
print(f"\nk=16, m=7: H={w.params['H']} has dimension {w.dimension} > expected {r.expected}")

"""Outputs with identical split probability, for a BSC and a BEC."""

from fractions import Fraction

from polarsym import bsc_canonicalize, enumerate_classes, make_bec, make_bsc
from polarsym.equivalence import FULL

bsc = make_bsc(Fraction(1, 3))
bec = make_bec(Fraction(1, 2))

# a binary channel only needs the 2^i vectors with a zero tail
rep = enumerate_classes(bsc, 3, 6)
print(f"BSC N=8 i=6: {rep.count} classes over the {rep.domain} domain")
for c in rep.classes:
    print("  ", "".join(map(str, c.representative)), c.probability, "x", c.size)

full = enumerate_classes(bsc, 3, 6, FULL)
print(f"same count on all 256 vectors: {full.count}")

y = (1, 0, 1, 1, 0, 1, 1, 1)
print("\ncanonical form of", y, "at i=6:", bsc_canonicalize(bsc, 6, y))

for i in range(5):
    rep = enumerate_classes(bec, 2, i)
    print(f"BEC N=4 i={i}: {rep.count} classes, sizes {[c.size for c in rep.classes]}")

"""Empirical checks of the symmetry statements, including where they stop holding."""

from fractions import Fraction

from polarsym import make_bec, make_bsc, split_prob
from polarsym.channel import make_channel
from polarsym.counting import upper_bound_i0
from polarsym.equivalence import count_classes, lift, verify_doubling, verify_orbits

bsc = make_bsc(Fraction(1, 3))
bec = make_bec(Fraction(1, 2))

for ch in (bsc, bec):
    ok = all(verify_orbits(ch, 2, i).passed for i in range(5))
    print(f"{ch}: row-space orbits share probabilities: {ok}")

# doubling with the zero symbol holds; other companions can break it for the BEC
for ch in (bsc, bec):
    for i in range(5):
        v = verify_doubling(ch, 2, i)
        print(f"{ch} i={i} lift ok by companion: {v.details['companions']}")

y, v = (0, 0), (0, 1)
print("\nBEC N=2 i=1:", split_prob(bec, 1, y), split_prob(bec, 1, v))
print("lifted with 'e':", split_prob(bec, 1, lift(y, 1)), split_prob(bec, 1, lift(v, 1)))

# distinct ratios are not enough for the i=0 bound to be tight
ch = make_channel(
    ["a", "b", "b'", "a'"],
    ["1/8", "1/16", "7/16", "3/8"],
    ["3/8", "7/16", "1/16", "1/8"],
    (3, 2, 1, 0),
)
print(f"\nfour-symbol channel, N=2 i=0: brute {count_classes(ch, 1, 0)}, bound {upper_bound_i0(2, 0, 4)}")

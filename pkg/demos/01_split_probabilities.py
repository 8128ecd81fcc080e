"""Split-channel probabilities of a BSC, exactly, and how they polarize with i."""

from fractions import Fraction

import numpy as np

from polarsym import make_bsc, split_prob
from polarsym.gf2 import generator, tail_rows
from polarsym.splitprob import domain_array, split_probs

ch = make_bsc(Fraction(1, 10))
N = 8

print("G_8 =")
print(generator(N).to_array())

# the sum for bit i runs over the row space of the last N - i rows
A = tail_rows(generator(N), 5)
print("\nA(8, 5) =")
print(A.to_array())

y = (0, 1, 0, 0, 0, 0, 1, 0)
for i in range(1, N + 1):
    p = split_prob(ch, i, y)
    print(f"W_8^({i})(y) = {p}  ~ {float(p):.3e}")

# distribution over all 256 outputs, bit 1 vs bit 8
ys = domain_array(2, N)
for i in (1, 8):
    vals = np.array([float(v) for v in split_probs(ch, i, ys)])
    vals *= 2 ** (i - 1)   # condition on the zero prefix
    print(f"\nbit {i}: distinct values {len(set(split_probs(ch, i, ys)))}, "
          f"max {vals.max():.4f}, mass of top 8 outputs {np.sort(vals)[-8:].sum():.4f}")

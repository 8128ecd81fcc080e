"""Closed-form counts against brute force, and how far below 2^i they sit."""

from fractions import Fraction

from polarsym import CountInstance, bsc_class_count, class_count, make_bec, make_bsc, reduce_instance
from polarsym.equivalence import count_classes

bsc = make_bsc(Fraction(1, 3))

print(" N   i  formula  brute   2^i")
for n_exp in (2, 3, 4):
    N = 1 << n_exp
    for k in range(n_exp):
        i = N - (1 << k)
        print(f"{N:2d} {i:3d} {bsc_class_count(n_exp, i):8d} {count_classes(bsc, n_exp, i):6d} {2**i:5d}")

# large N: only the formula is feasible
for n_exp in (6, 8, 10):
    N = 1 << n_exp
    a = 1 << (n_exp // 2)
    print(f"N={N} i={N - a}: {bsc_class_count(n_exp, N - a)} classes instead of 2^{N - a}")

# the reduction step for the BEC: 8 positions folded into 4 pair-count symbols
bec = make_bec(Fraction(1, 2))
inst = CountInstance.for_channel(bec, 8, 4)
print("\nBEC instance", inst, "->", reduce_instance(inst, 4))
res = class_count(bec, inst)
print(f"class_count: {res.value} ({res.exactness}), brute force {count_classes(bec, 3, 4)}")

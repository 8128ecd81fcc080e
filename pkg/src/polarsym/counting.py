"""Closed-form class counts and the occurrence-vector reduction.

Notation: ``s1`` self symbols, ``s2`` symm symbols, ``N`` block length and
``i`` the bit index, with ``A(N, i)`` the last ``N - i`` rows of ``G_N``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, gcd
from typing import Sequence

from . import limits as _limits
from .channel import AlphabetPartition, SymmetricChannel, multiset_channel
from .gf2 import block_exponent


@dataclass(frozen=True)
class OccurrenceVector:
    """Symbol counts ``(q_1..q_S1, e_1..e_S2)`` of a received vector."""

    q: tuple
    e: tuple

    def __post_init__(self):
        if any(c < 0 for c in self.q + self.e):
            raise ValueError("negative occurrence count")

    @property
    def counts(self) -> tuple:
        return self.q + self.e

    @property
    def total(self) -> int:
        return sum(self.q) + sum(self.e)

    @property
    def is_self(self) -> bool:
        return self.e == self.e[::-1]

    def star(self, bit: int) -> "OccurrenceVector":
        return self if not bit else OccurrenceVector(self.q, self.e[::-1])

    def __str__(self) -> str:
        q = ",".join(map(str, self.q))
        e = ",".join(map(str, self.e))
        return f"({q}|{e})"


def star(bit: int, z: OccurrenceVector) -> OccurrenceVector:
    """``0*z = z``; ``1*z`` reverses the symm block."""
    return z.star(bit)


def yprime(partition: AlphabetPartition, y: Sequence[int]) -> OccurrenceVector:
    counts = {s: 0 for s in partition.order}
    for s in y:
        counts[s] += 1
    return OccurrenceVector(
        tuple(counts[s] for s in partition.self_set),
        tuple(counts[s] for s in partition.symm_set),
    )


def _compositions(total: int, parts: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for head in range(total, -1, -1):
        for rest in _compositions(total - head, parts - 1):
            yield (head,) + rest


def occurrence_alphabet(partition: AlphabetPartition, m: int) -> list:
    """Every occurrence vector with total ``m``, in descending lexicographic order."""
    s1 = partition.s1
    return [
        OccurrenceVector(c[:s1], c[s1:])
        for c in _compositions(m, partition.s1 + partition.s2)
    ]


def count_yprime(s1: int, s2: int, n: int) -> int:
    """Stars and bars: ``C(n + s1 + s2 - 1, s1 + s2 - 1)``."""
    if s1 < 0 or s2 < 0 or s1 + s2 < 1 or n < 0:
        raise ValueError("need s1 + s2 >= 1 and n >= 0")
    return comb(n + s1 + s2 - 1, s1 + s2 - 1)


def count_self(s1: int, s2: int, n: int) -> int:
    """Occurrence vectors fixed by ``*`` (palindromic symm block)."""
    if s2 % 2:
        raise ValueError("s2 must be even")
    if s1 < 0 or s2 < 0 or s1 + s2 < 1 or n < 0:
        raise ValueError("need s1 + s2 >= 1 and n >= 0")
    h = s2 // 2
    if h == 0:
        return comb(n + s1 - 1, s1 - 1)
    if s1 == 0:
        return 0 if n % 2 else comb(n // 2 + h - 1, h - 1)
    return sum(comb(r + h - 1, h - 1) * comb(n - 2 * r + s1 - 1, s1 - 1) for r in range(n // 2 + 1))


def count_symm(s1: int, s2: int, n: int) -> int:
    return count_yprime(s1, s2, n) - count_self(s1, s2, n)


@dataclass(frozen=True)
class CountInstance:
    n: int   # block length
    i: int
    s1: int
    s2: int

    def __post_init__(self):
        block_exponent(self.n)
        if not 0 <= self.i <= self.n:
            raise ValueError(f"bit index {self.i} outside 0..{self.n}")
        if self.s2 % 2 or self.s1 < 0 or self.s2 < 0 or self.s1 + self.s2 < 1:
            raise ValueError("invalid alphabet partition sizes")

    @classmethod
    def for_channel(cls, ch: SymmetricChannel, n: int, i: int) -> "CountInstance":
        part = ch.partition()
        return cls(n, i, part.s1, part.s2)


EXACT = "exact"
UPPER_BOUND = "upper-bound"


@dataclass(frozen=True)
class CountResult:
    value: int
    exactness: str
    a_prime: int
    reduced: CountInstance

    @property
    def exact(self) -> bool:
        return self.exactness == EXACT


def _is_pow2(x: int) -> bool:
    return x >= 1 and not x & (x - 1)


def valid_a_primes(n: int, i: int) -> list:
    """Powers of two ``a'`` with ``n >= a' >= n - i`` and ``a' >= 1``."""
    return [1 << k for k in range(block_exponent(n) + 1) if (1 << k) >= n - i]


def reduce_instance(inst: CountInstance, a_prime: int) -> CountInstance:
    """Fold stride classes of length ``N/a'`` into single occurrence-vector symbols."""
    if not _is_pow2(a_prime) or not inst.n >= a_prime >= inst.n - inst.i:
        raise ValueError(f"a'={a_prime} invalid for N={inst.n}, i={inst.i}")
    m = inst.n // a_prime
    if m == 1:
        return inst
    return CountInstance(
        a_prime,
        inst.i - (inst.n - a_prime),
        count_self(inst.s1, inst.s2, m),
        count_symm(inst.s1, inst.s2, m),
    )


def z_map(partition: AlphabetPartition, a_prime: int, y: Sequence[int]) -> tuple:
    """Occurrence vectors of the stride subsequences ``y[j], y[j+a'], ...``."""
    if a_prime < 1 or len(y) % a_prime:
        raise ValueError(f"stride {a_prime} does not divide length {len(y)}")
    return tuple(yprime(partition, y[j::a_prime]) for j in range(a_prime))


def upper_bound_i0(n: int, s1: int, s2: int) -> int:
    """Class-count bound at ``i = 0``: multisets over ``s1 + s2/2`` orbit types."""
    if s2 % 2:
        raise ValueError("s2 must be even")
    k = s2 // 2 + s1
    if k < 1:
        raise ValueError("empty alphabet")
    return comb(n + k - 1, k - 1)


def tail_bound(inst: CountInstance) -> int:
    """Bound for ``i > 0``: free head symbols, tail symbols reduced to orbit representatives."""
    alphabet = inst.s1 + inst.s2
    return alphabet**inst.i * (inst.s1 + inst.s2 // 2) ** (inst.n - inst.i)


def orbit_totals(ch: SymmetricChannel) -> list:
    """``W(y|0) + W(y|1)`` for each self symbol and each conjugate-pair representative."""
    part = ch.partition()
    return [ch.w0[y] + ch.w1[y] for y in part.self_set + part.representatives]


def products_injective(totals: Sequence, size: int, cap: int = 1 << 18):
    """Whether multisets of ``size`` orbit types have pairwise distinct total products.

    At ``i = 0`` the row space is all of ``F_2^N`` and the split value of ``y``
    factors as ``prod_j (W(y_j|0) + W(y_j|1))``, so this is exactly the
    condition for the ``i = 0`` bound to be attained.  Returns ``None`` when
    there are more than ``cap`` multisets to compare.
    """
    k = len(totals)
    if comb(size + k - 1, k - 1) > cap:
        return None
    den = 1
    for t in totals:
        den = den * t.denominator // gcd(den, t.denominator)
    nums = [int(t * den) for t in totals]
    seen = set()
    for c in _compositions(size, k):
        value = 1
        for n, e in zip(nums, c):
            if e:
                value *= n**e
        if value in seen:
            return False
        seen.add(value)
    return True


def _reduced_exact(ch: SymmetricChannel, m: int, size: int):
    if m > 1:
        part = ch.partition()
        if count_yprime(part.s1, part.s2, m) > _limits.current().max_alphabet:
            return None
        ch = multiset_channel(ch, m)
    return products_injective(orbit_totals(ch), size)


def class_count(ch: SymmetricChannel, inst: CountInstance, a_prime_policy="auto") -> CountResult:
    """Number of distinct ``W_N^(i)`` values via reduction, as exact value or bound.

    ``a_prime_policy`` is ``"auto"`` or an explicit power of two.  Under
    ``"auto"`` the reduction lands on ``i' = 0`` whenever ``N - i`` is a power
    of two; otherwise the smallest bound over all valid ``a'`` is returned.
    The result is labelled exact only when the reduced ``i' = 0`` instance is
    checked to attain its bound (see :func:`products_injective`); a passing
    :func:`distinct_d_check` alone is not taken as proof.
    """
    if a_prime_policy == "auto":
        a = inst.n - inst.i
        candidates = [a] if _is_pow2(a) else valid_a_primes(inst.n, inst.i)
    else:
        candidates = [int(a_prime_policy)]
    best = None
    for ap in candidates:
        red = reduce_instance(inst, ap)
        if red.i == 0:
            value = upper_bound_i0(red.n, red.s1, red.s2)
            exact = _reduced_exact(ch, inst.n // ap, red.n) is True
            res = CountResult(value, EXACT if exact else UPPER_BOUND, ap, red)
        else:
            res = CountResult(tail_bound(red), UPPER_BOUND, ap, red)
        if best is None or (res.exact, -res.value) > (best.exact, -best.value):
            best = res
    return best


def bsc_class_count(n_exp: int, i: int) -> int:
    """``C(a + N/2a, N/2a)`` for ``a = N - i`` a power of two with ``N/2a`` integral."""
    N = 1 << n_exp
    a = N - i
    if not _is_pow2(a):
        raise ValueError(f"N - i = {a} is not a power of two")
    if N % (2 * a):
        raise ValueError(f"N/(2a) = {N}/{2 * a} is not integral; use class_count")
    k = N // (2 * a)
    return comb(a + k, k)


def naive_count(ch: SymmetricChannel, i: int) -> int:
    """``|Y|^i``, the class bound from the generic split-channel symmetry alone."""
    return ch.size**i


def reduced_class_count(ch: SymmetricChannel, n_exp: int, i: int, a_prime: int, workers: int = 1) -> int:
    """Brute-force class count of the reduced instance ``(Y'^a', A(a', i'), *)``.

    Every vector over the occurrence-vector alphabet of multiplicity ``N/a'``
    is enumerated with product weights.
    """
    from .equivalence import FULL, count_classes

    N = 1 << n_exp
    red = reduce_instance(CountInstance.for_channel(ch, N, i), a_prime)
    reduced_ch = multiset_channel(ch, N // a_prime)
    return count_classes(reduced_ch, block_exponent(a_prime), red.i, FULL, workers=workers)

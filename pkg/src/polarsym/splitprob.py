"""Exact split-channel transition probabilities.

``W_N^(i)(y) = 2^-(N-1) * sum_{u in row(A(N,i))} W^N(u . y | 0)``.

The fast path works in integers: every ``W(y|0)`` is written over a common
denominator ``D``, each row-space term contributes ``prod num[s]^count[s]``,
and terms with the same symbol-count profile are summed once.  The single
division by ``D^N 2^(N-1)`` happens at the end.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from math import lcm, prod
from typing import Iterable, Sequence

import numpy as np

from . import limits as _limits
from .channel import SymmetricChannel, apply_mask
from .gf2 import block_exponent, generator, row_space, row_space_array, tail_rows, vec_mat

_CHUNK_ELEMS = 1 << 22


def w_n_vector(ch: SymmetricChannel, y: Sequence[int], x: Sequence[int]) -> Fraction:
    """``prod_j W(y_j | x_j)``."""
    if len(y) != len(x):
        raise ValueError(f"length mismatch: {len(y)} vs {len(x)}")
    out = Fraction(1)
    for s, b in zip(y, x):
        out *= ch.w1[s] if b else ch.w0[s]
    return out


def w_combined(ch: SymmetricChannel, y: Sequence[int], u: Sequence[int]) -> Fraction:
    """``W_N(y | u) = W^N(y | u G_N)``."""
    if len(y) != len(u):
        raise ValueError(f"length mismatch: {len(y)} vs {len(u)}")
    return w_n_vector(ch, y, vec_mat(u, generator(len(u))))


def _check_args(ch: SymmetricChannel, i: int, y: Sequence[int]) -> int:
    N = len(y)
    block_exponent(N)
    if not 0 <= i <= N:
        raise ValueError(f"bit index {i} outside 0..{N}")
    if any(not 0 <= s < ch.size for s in y):
        raise ValueError("symbol index outside the channel alphabet")
    return N


class SplitEvaluator:
    """Batch evaluator of ``W_N^(i)`` for a fixed channel, ``N`` and ``i``.

    ``i = 0`` is accepted and means the full row space ``F_2^N``.
    """

    def __init__(self, ch: SymmetricChannel, N: int, i: int):
        block_exponent(N)
        if not 0 <= i <= N:
            raise ValueError(f"bit index {i} outside 0..{N}")
        self.ch, self.N, self.i = ch, N, i
        self.masks = row_space_array(tail_rows(generator(N), i)).astype(bool)
        den = lcm(*(w.denominator for w in ch.w0))
        self.nums = [int(w * den) for w in ch.w0]
        self.scale = Fraction(1, den**N * 2 ** (N - 1))
        self.conj = np.array(ch.conj, dtype=np.int64)
        radix = (N + 1) ** ch.size
        # float64 matmul stays exact below 2^53
        self.radix = radix if radix < 1 << 52 else None
        if self.radix is not None:
            self.place = np.array([(N + 1) ** k for k in range(ch.size)], dtype=np.int64)
            self.masks_f = self.masks.astype(np.float64)
        self._weights: dict = {}

    def raw(self, ys) -> list:
        """Integer sums ``sum_u prod num[(u.y)_j]``; multiply by ``scale`` for probabilities."""
        ys = np.asarray(ys, dtype=np.int64)
        if ys.ndim != 2 or ys.shape[1] != self.N:
            raise ValueError(f"expected shape (B, {self.N})")
        if ys.size and (ys.min() < 0 or ys.max() >= self.ch.size):
            raise ValueError("symbol index outside the channel alphabet")
        R = len(self.masks)
        step = max(1, _CHUNK_ELEMS // (R * self.N))
        if self.radix is not None:
            step = min(step, max(1, (1 << 62) // self.radix))
        out = []
        for lo in range(0, len(ys), step):
            chunk = ys[lo : lo + step]
            out.extend(self._raw_radix(chunk) if self.radix is not None else self._raw_profiles(chunk))
        return out

    def _weight(self, key: int) -> int:
        w = self._weights.get(key)
        if w is None:
            w, k = 1, key
            for n in self.nums:
                k, c = divmod(k, self.N + 1)
                if c:
                    w *= n**c
            self._weights[key] = w
        return w

    def _raw_radix(self, ys: np.ndarray) -> list:
        # profile key of a term is sum_j (N+1)^symbol_j, affine in the mask bits
        B = len(ys)
        direct = self.place[ys]
        delta = (self.place[self.conj[ys]] - direct).astype(np.float64)
        keys = (self.masks_f @ delta.T).astype(np.int64) + direct.sum(axis=1)[None, :]
        flat = (keys + np.arange(B, dtype=np.int64)[None, :] * self.radix).ravel()
        if B * self.radix <= _CHUNK_ELEMS:
            hist = np.bincount(flat, minlength=B * self.radix)
            found = np.flatnonzero(hist)
            mult = hist[found]
        else:
            found, mult = np.unique(flat, return_counts=True)
        totals = [0] * B
        for key, m in zip(found.tolist(), mult.tolist()):
            b, k = divmod(key, self.radix)
            totals[b] += m * self._weight(k)
        return totals

    def _raw_profiles(self, ys: np.ndarray) -> list:
        B, K, R = len(ys), self.ch.size, len(self.masks)
        flipped = self.conj[ys]
        syms = np.where(self.masks[None, :, :], flipped[:, None, :], ys[:, None, :])
        counts = np.stack([(syms == k).sum(axis=2) for k in range(K)], axis=2).reshape(B * R, K)
        profiles, inv = np.unique(counts, axis=0, return_inverse=True)
        inv = inv.reshape(-1)
        weights = [prod(n**int(c) for n, c in zip(self.nums, row)) for row in profiles]
        P = len(profiles)
        pair = np.repeat(np.arange(B, dtype=np.int64), R) * P + inv
        keys, mult = np.unique(pair, return_counts=True)
        totals = [0] * B
        for key, m in zip(keys.tolist(), mult.tolist()):
            b, p = divmod(key, P)
            totals[b] += m * weights[p]
        return totals

    def values(self, ys) -> list:
        return [self.scale * r for r in self.raw(ys)]

    def __call__(self, y: Sequence[int]) -> Fraction:
        return self.values([list(y)])[0]


@lru_cache(maxsize=64)
def evaluator(ch: SymmetricChannel, N: int, i: int) -> SplitEvaluator:
    return SplitEvaluator(ch, N, i)


def split_prob(ch: SymmetricChannel, i: int, y: Sequence[int]) -> Fraction:
    """``W_N^(i)(y, 0^(i-1) | 0)`` exactly."""
    N = _check_args(ch, i, y)
    return evaluator(ch, N, i)(y)


def split_probs(ch: SymmetricChannel, i: int, ys) -> list:
    """:func:`split_prob` over a batch of equal-length vectors."""
    ys = np.asarray(ys, dtype=np.int64)
    return evaluator(ch, ys.shape[1], i).values(ys)


def split_prob_reference(ch: SymmetricChannel, i: int, y: Sequence[int]) -> Fraction:
    """Term-by-term evaluation over the row space; slow, used as a cross-check."""
    N = _check_args(ch, i, y)
    zero = (0,) * N
    total = sum(
        (w_n_vector(ch, apply_mask(ch, m, y), zero) for m in row_space(tail_rows(generator(N), i))),
        Fraction(0),
    )
    return total / 2 ** (N - 1)


def split_prob_general(ch: SymmetricChannel, i: int, y: Sequence[int], u_prev: Sequence[int], u_i: int) -> Fraction:
    """``W_N^(i)(y, u_prev | u_i)`` reduced to the all-zero form by a coset shift."""
    N = _check_args(ch, i, y)
    if i < 1:
        raise ValueError("bit index must be at least 1")
    if len(u_prev) != i - 1:
        raise ValueError(f"u_prev must have length {i - 1}")
    a = tuple(u_prev) + (u_i,) + (0,) * (N - i)
    shifted = apply_mask(ch, vec_mat(a, generator(N)), y)
    return split_prob(ch, i, shifted)


def split_prob_direct(ch: SymmetricChannel, i: int, y: Sequence[int], u_prev: Sequence[int], u_i: int) -> Fraction:
    """Sum of ``W_N(y|u) / 2^(N-1)`` over the free bits ``u_(i+1)..u_N``."""
    N = _check_args(ch, i, y)
    if len(u_prev) != i - 1:
        raise ValueError(f"u_prev must have length {i - 1}")
    G = generator(N)
    head = tuple(u_prev) + (u_i,)
    total = Fraction(0)
    for rest in itertools.product((0, 1), repeat=N - i):
        total += w_n_vector(ch, y, vec_mat(head + rest, G))
    return total / 2 ** (N - 1)


def all_vectors(alphabet_size: int, N: int) -> Iterable[tuple]:
    return itertools.product(range(alphabet_size), repeat=N)


def domain_array(alphabet_size: int, N: int, free: int | None = None, start: int = 0, stop: int | None = None) -> np.ndarray:
    """Vectors in lexicographic order, indices ``[start, stop)``.

    With ``free`` set, only the first ``free`` positions vary and the rest are
    symbol 0 (the canonical domain of a binary channel when ``alphabet_size=2``).
    """
    free = N if free is None else free
    total = alphabet_size**free
    stop = total if stop is None else min(stop, total)
    idx = np.arange(start, stop, dtype=np.int64)
    out = np.zeros((len(idx), N), dtype=np.int64)
    for j in range(free):
        out[:, j] = (idx // alphabet_size ** (free - 1 - j)) % alphabet_size
    return out


def domain_size(alphabet_size: int, free: int) -> int:
    return alphabet_size**free


def check_domain(alphabet_size: int, free: int) -> int:
    size = domain_size(alphabet_size, free)
    _limits.check("domain", size, _limits.current().max_domain)
    return size

"""Symmetric binary-input channels with exact rational transition probabilities."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import limits as _limits


class ChannelError(ValueError):
    """A channel description violates the symmetric B-DMC invariants."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        # floats are accepted but converted through their repr
        return Fraction(repr(x))
    return Fraction(x)


def fmt_fraction(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class SymmetricChannel:
    """Output alphabet, ``W(y|0)``, ``W(y|1)`` and the conjugation ``1 . y``.

    ``normalized=False`` marks derived channels whose weights are likelihood
    products rather than a probability distribution.
    """

    symbols: tuple
    w0: tuple
    w1: tuple
    conj: tuple
    name: str = ""
    normalized: bool = True

    def __post_init__(self):
        n = len(self.symbols)
        if not (len(self.w0) == len(self.w1) == len(self.conj) == n):
            raise ChannelError(["field lengths differ"])
        object.__setattr__(self, "w0", tuple(as_fraction(x) for x in self.w0))
        object.__setattr__(self, "w1", tuple(as_fraction(x) for x in self.w1))
        object.__setattr__(self, "conj", tuple(int(c) for c in self.conj))
        object.__setattr__(self, "symbols", tuple(str(s) for s in self.symbols))

    @property
    def size(self) -> int:
        return len(self.symbols)

    def partition(self) -> "AlphabetPartition":
        return AlphabetPartition.of(self)

    @property
    def is_bsc_like(self) -> bool:
        """Binary output with conjugation swapping the two symbols."""
        return self.size == 2 and self.conj == (1, 0)

    def index(self, label: str) -> int:
        return self.symbols.index(label)

    def __str__(self) -> str:
        return self.name or f"channel[{','.join(self.symbols)}]"


@dataclass(frozen=True)
class AlphabetPartition:
    """``self(Y)`` and ``symm(Y)`` with the mirrored pairing of conjugates.

    ``symm_set[t]`` and ``symm_set[s2 - 1 - t]`` are conjugate (0-based).
    """

    self_set: tuple
    symm_set: tuple

    @property
    def s1(self) -> int:
        return len(self.self_set)

    @property
    def s2(self) -> int:
        return len(self.symm_set)

    @property
    def order(self) -> tuple:
        return self.self_set + self.symm_set

    @property
    def representatives(self) -> tuple:
        return self.symm_set[: self.s2 // 2]

    @classmethod
    def of(cls, ch: SymmetricChannel) -> "AlphabetPartition":
        selfs = tuple(y for y in range(ch.size) if ch.conj[y] == y)
        heads = sorted(y for y in range(ch.size) if ch.conj[y] > y)
        tails = [ch.conj[y] for y in reversed(heads)]
        return cls(selfs, tuple(heads) + tuple(tails))


@dataclass(frozen=True)
class DRatio:
    """``W(1.y|0) : W(y|0)`` as a projective pair, compared by cross-multiplication."""

    num: Fraction
    den: Fraction

    def __post_init__(self):
        if self.num == 0 and self.den == 0:
            raise ValueError("0:0 ratio")

    def __eq__(self, other):
        if not isinstance(other, DRatio):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        if self.den == 0:
            return hash(("inf",))
        return hash(self.num / self.den)

    def inverse(self) -> "DRatio":
        return DRatio(self.den, self.num)

    @property
    def is_unit(self) -> bool:
        return self.num == self.den


def d_ratio(ch: SymmetricChannel, y: int) -> DRatio:
    return DRatio(ch.w0[ch.conj[y]], ch.w0[y])


def make_channel(symbols, w0, w1, conj, name="", normalized=True, check=True) -> SymmetricChannel:
    ch = SymmetricChannel(tuple(symbols), tuple(w0), tuple(w1), tuple(conj), name, normalized)
    if check:
        bad = validate(ch)
        if bad:
            raise ChannelError(bad)
    return ch


def make_bsc(p) -> SymmetricChannel:
    p = as_fraction(p)
    if not 0 <= p <= 1:
        raise ValueError(f"crossover probability {p} outside [0, 1]")
    return make_channel(("0", "1"), (1 - p, p), (p, 1 - p), (1, 0), name=f"bsc:{fmt_fraction(p)}")


def make_bec(eps) -> SymmetricChannel:
    eps = as_fraction(eps)
    if not 0 <= eps <= 1:
        raise ValueError(f"erasure probability {eps} outside [0, 1]")
    return make_channel(
        ("0", "e", "1"), (1 - eps, eps, 0), (0, eps, 1 - eps), (2, 1, 0), name=f"bec:{fmt_fraction(eps)}"
    )


def validate(ch: SymmetricChannel) -> list:
    """Every invariant violation of ``ch``; an empty list means valid."""
    out = []
    n = ch.size
    if n == 0:
        return ["empty alphabet"]
    if len(set(ch.symbols)) != n:
        out.append("duplicate symbol labels")
    for y, c in enumerate(ch.conj):
        if not 0 <= c < n:
            out.append(f"conj of {ch.symbols[y]} out of range")
    if out:
        return out
    for y in range(n):
        if ch.conj[ch.conj[y]] != y:
            out.append(f"conj not involution at {ch.symbols[y]}")
    for y in range(n):
        for name, w in (("w0", ch.w0[y]), ("w1", ch.w1[y])):
            if w < 0:
                out.append(f"negative {name} at {ch.symbols[y]}")
            if ch.normalized and w > 1:
                out.append(f"{name} above 1 at {ch.symbols[y]}")
    for y in range(n):
        v = ch.conj[y]
        if ch.w0[v] != ch.w1[y] or ch.w1[v] != ch.w0[y]:
            out.append(f"symmetry broken at {ch.symbols[y]}")
    if ch.normalized:
        if sum(ch.w0) != 1:
            out.append("W(.|0) does not sum to 1")
        if sum(ch.w1) != 1:
            out.append("W(.|1) does not sum to 1")
    moved = sum(1 for y in range(n) if ch.conj[y] != y)
    if moved % 2:
        out.append("odd number of symm symbols")
    return out


def apply_mask(ch: SymmetricChannel, mask: Sequence[int], y: Sequence[int]) -> tuple:
    """Element-wise ``mask_j . y_j``."""
    if len(mask) != len(y):
        raise ValueError(f"mask length {len(mask)} != vector length {len(y)}")
    conj = ch.conj
    return tuple(conj[s] if m else s for m, s in zip(mask, y))


def distinct_d_check(ch: SymmetricChannel) -> bool:
    """Whether the per-symbol likelihood ratios are pairwise distinct.

    Self symbols all carry ratio 1, so at most one may have positive mass.
    Each conjugate pair contributes one representative; the check does not
    depend on which one, since pairs are compared as ``{r, 1/r}``.  A symbol
    of zero total mass, or a pair with ratio 1, fails the check.
    """
    part = ch.partition()
    for y in range(ch.size):
        if ch.w0[y] == 0 and ch.w1[y] == 0:
            return False
    if part.s1 > 1:
        return False
    seen = []
    for y in part.representatives:
        r = d_ratio(ch, y)
        if r.is_unit:
            return False
        if any(r == s or r == s.inverse() for s in seen):
            return False
        seen.append(r)
    return True


def is_noiseless(ch: SymmetricChannel) -> bool:
    return all(ch.w0[y] == 0 or ch.w1[y] == 0 for y in range(ch.size))


def is_degenerate(ch: SymmetricChannel) -> bool:
    """Counting theorems are not expected to be tight for this channel."""
    return is_noiseless(ch) or not distinct_d_check(ch)


def multiset_channel(ch: SymmetricChannel, m: int) -> SymmetricChannel:
    """Channel on occurrence vectors of ``m`` symbols, with the ``*`` conjugation.

    Weights are the unnormalized products ``prod W(y|0)^count``.  Symbol ``k``
    corresponds to ``occurrence_alphabet(partition, m)[k]``.
    """
    from .counting import count_yprime, occurrence_alphabet

    if m < 1:
        raise ValueError("multiplicity must be at least 1")
    part = ch.partition()
    _limits.check("multiset alphabet", count_yprime(part.s1, part.s2, m), _limits.current().max_alphabet)
    alphabet = occurrence_alphabet(part, m)
    where = {z: k for k, z in enumerate(alphabet)}
    base = [ch.w0[y] for y in part.order]
    w0 = []
    for z in alphabet:
        w = Fraction(1)
        for b, c in zip(base, z.counts):
            if c:
                w *= b**c
        w0.append(w)
    conj = [where[z.star(1)] for z in alphabet]
    w1 = [w0[c] for c in conj]
    name = f"{ch}^[{m}]"
    return make_channel([str(z) for z in alphabet], w0, w1, conj, name=name, normalized=False)


def channel_to_dict(ch: SymmetricChannel) -> dict:
    return {
        "symbols": list(ch.symbols),
        "w0": [fmt_fraction(x) for x in ch.w0],
        "w1": [fmt_fraction(x) for x in ch.w1],
        "conj": list(ch.conj),
    }


def channel_from_dict(data: dict, name: str = "") -> SymmetricChannel:
    try:
        symbols = data["symbols"]
        w0 = [Fraction(str(x)) for x in data["w0"]]
        w1 = [Fraction(str(x)) for x in data["w1"]]
        conj = data["conj"]
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise ChannelError([f"malformed channel description: {exc}"]) from exc
    try:
        ch = SymmetricChannel(tuple(symbols), tuple(w0), tuple(w1), tuple(conj), name)
    except ChannelError:
        raise
    bad = validate(ch)
    if bad:
        raise ChannelError(bad)
    return ch


def load_channel(path) -> SymmetricChannel:
    path = Path(path)
    return channel_from_dict(json.loads(path.read_text()), name=path.stem)


def dump_channel(ch: SymmetricChannel, path) -> None:
    Path(path).write_text(json.dumps(channel_to_dict(ch), indent=2) + "\n")


def parse_channel(spec: str) -> SymmetricChannel:
    """``bsc:<p>``, ``bec:<eps>`` or a path to a JSON channel file."""
    kind, sep, arg = spec.partition(":")
    if sep and kind.lower() == "bsc":
        return make_bsc(Fraction(arg))
    if sep and kind.lower() == "bec":
        return make_bec(Fraction(arg))
    return load_channel(spec)

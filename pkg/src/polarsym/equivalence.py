"""Probability equivalence of received vectors and brute-force class enumeration."""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .channel import SymmetricChannel, apply_mask, is_degenerate
from .gf2 import (
    generator,
    permute_columns,
    permute_vector,
    row_space,
    rowspace_equal,
    solve_tail,
    tail_rows,
    vec_mat,
)
from .splitprob import check_domain, domain_array, evaluator, split_prob

FULL = "full-alphabet"
CANONICAL = "bsc-canonical"


@dataclass(frozen=True)
class EquivalenceClass:
    representative: tuple
    probability: Fraction
    size: int


@dataclass(frozen=True)
class ClassReport:
    n: int
    i: int
    domain: str
    classes: tuple
    degenerate: bool = False

    @property
    def count(self) -> int:
        return len(self.classes)

    @property
    def domain_size(self) -> int:
        return sum(c.size for c in self.classes)


def prob_equivalent(ch: SymmetricChannel, i: int, y: Sequence[int], v: Sequence[int]) -> bool:
    if len(y) != len(v):
        raise ValueError("vectors differ in length")
    return split_prob(ch, i, y) == split_prob(ch, i, v)


def _require_bsc(ch: SymmetricChannel) -> None:
    if not ch.is_bsc_like:
        raise ValueError(f"{ch} is not a binary channel with bit-flip conjugation")


def bsc_canonicalize(ch: SymmetricChannel, i: int, y: Sequence[int]) -> tuple:
    """The equivalent vector whose positions ``i+1..N`` are zero."""
    _require_bsc(ch)
    N = len(y)
    A = tail_rows(generator(N), i)
    if i == N:
        return tuple(y)
    u = solve_tail(A, i, tuple(y[i:]))
    return apply_mask(ch, vec_mat(u, A), y)


def symmetry_orbit(ch: SymmetricChannel, i: int, y: Sequence[int]) -> set:
    """``{(uA) . y}`` over the row space of ``A(N, i)``."""
    A = tail_rows(generator(len(y)), i)
    return {apply_mask(ch, m, y) for m in row_space(A)}


def _domain_spec(ch: SymmetricChannel, N: int, i: int, domain: str | None):
    if domain is None:
        domain = CANONICAL if ch.is_bsc_like else FULL
    if domain == CANONICAL:
        _require_bsc(ch)
        return domain, i
    if domain == FULL:
        return domain, N
    raise ValueError(f"unknown domain {domain!r}")


def _classify_range(args):
    ch, N, i, free, start, stop = args
    ys = domain_array(ch.size, N, free, start, stop)
    ev = evaluator(ch, N, i)
    groups: dict = {}
    for k, raw in enumerate(ev.raw(ys)):
        hit = groups.get(raw)
        if hit is None:
            groups[raw] = [1, start + k]
        else:
            hit[0] += 1
    return groups


def class_table(ch: SymmetricChannel, n_exp: int, i: int, domain: str | None = None, workers: int = 1):
    """Map raw integer sum -> (class size, index of first member), plus the scale and free length."""
    N = 1 << n_exp
    if not 0 <= i <= N:
        raise ValueError(f"bit index {i} outside 0..{N}")
    domain, free = _domain_spec(ch, N, i, domain)
    total = check_domain(ch.size, free)
    ev = evaluator(ch, N, i)
    parts = max(1, min(workers, total))
    bounds = [total * k // parts for k in range(parts + 1)]
    jobs = [(ch, N, i, free, bounds[k], bounds[k + 1]) for k in range(parts)]
    if workers > 1 and parts > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_classify_range, jobs))
    else:
        results = [_classify_range(j) for j in jobs]
    merged: dict = {}
    for part in results:
        for raw, (size, first) in part.items():
            hit = merged.get(raw)
            if hit is None:
                merged[raw] = [size, first]
            else:
                hit[0] += size
                hit[1] = min(hit[1], first)
    return merged, ev.scale, domain, free


def enumerate_classes(
    ch: SymmetricChannel, n_exp: int, i: int, domain: str | None = None, workers: int = 1
) -> ClassReport:
    """Group every vector of the domain by its exact split probability.

    Binary bit-flip channels default to the canonical domain (zero tail,
    ``2^i`` vectors); other channels use all ``|Y|^N`` vectors.
    """
    N = 1 << n_exp
    merged, scale, domain, free = class_table(ch, n_exp, i, domain, workers)
    classes = []
    for raw, (size, first) in merged.items():
        rep = tuple(domain_array(ch.size, N, free, first, first + 1)[0].tolist())
        classes.append(EquivalenceClass(rep, scale * raw, size))
    classes.sort(key=lambda c: (-c.probability, c.representative))
    return ClassReport(N, i, domain, tuple(classes), is_degenerate(ch))


def count_classes(ch: SymmetricChannel, n_exp: int, i: int, domain: str | None = None, workers: int = 1) -> int:
    return len(class_table(ch, n_exp, i, domain, workers)[0])


def _prob_table(ch: SymmetricChannel, N: int, i: int) -> dict:
    """Raw split sums of every vector in ``Y^N``, keyed by the vector."""
    check_domain(ch.size, N)
    ys = domain_array(ch.size, N)
    raw = evaluator(ch, N, i).raw(ys)
    return dict(zip(map(tuple, ys.tolist()), raw))


@dataclass
class Verdict:
    """Outcome of an empirical theorem check."""

    name: str
    premise: bool = True
    passed: bool = True
    checked: int = 0
    counterexamples: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    def fail(self, example, limit: int = 10) -> None:
        self.passed = False
        if len(self.counterexamples) < limit:
            self.counterexamples.append(example)


def _sample_vectors(ch: SymmetricChannel, N: int, sample: int | None, rng: random.Random):
    if N <= 8 or sample is None:
        check_domain(ch.size, N)
        return [tuple(v) for v in domain_array(ch.size, N).tolist()]
    return [tuple(rng.randrange(ch.size) for _ in range(N)) for _ in range(sample)]


def verify_permutations(
    ch: SymmetricChannel,
    n_exp: int,
    i: int,
    perms: Sequence[Sequence[int]],
    sample: int | None = 200,
    seed: int = 0,
) -> Verdict:
    """If ``row(A) = row(AP)``, every ``y`` is equivalent to ``yP``.  Exhaustive for ``N <= 8``.

    Permutations whose premise fails are listed in ``details["premise_fails"]``
    and make no equivalence claim.
    """
    N = 1 << n_exp
    A = tail_rows(generator(N), i)
    v = Verdict("permutation", details={"premise_holds": 0, "premise_fails": []})
    ev = evaluator(ch, N, i)
    ys = _sample_vectors(ch, N, sample, random.Random(seed))
    base = None
    for perm in perms:
        if not rowspace_equal(A, permute_columns(A, perm)):
            v.details["premise_fails"].append(list(perm))
            continue
        v.details["premise_holds"] += 1
        if base is None:
            base = ev.raw(ys)
        moved = ev.raw([permute_vector(y, perm) for y in ys])
        for y, a, b in zip(ys, base, moved):
            v.checked += 1
            if a != b:
                v.fail({"perm": list(perm), "y": list(y)})
    v.premise = v.details["premise_holds"] > 0
    return v


def verify_permutation_theorem(
    ch: SymmetricChannel,
    n_exp: int,
    i: int,
    perm: Sequence[int],
    sample: int | None = 200,
    seed: int = 0,
) -> Verdict:
    return verify_permutations(ch, n_exp, i, [perm], sample, seed)


def verify_orbits(ch: SymmetricChannel, n_exp: int, i: int, sample: int | None = 200, seed: int = 0) -> Verdict:
    """Every member of the row-space orbit of ``y`` shares its split probability."""
    N = 1 << n_exp
    rng = random.Random(seed)
    ev = evaluator(ch, N, i)
    v = Verdict("orbit")
    A = tail_rows(generator(N), i)
    masks = list(row_space(A))
    for y in _sample_vectors(ch, N, sample, rng):
        members = [apply_mask(ch, m, y) for m in masks] if N <= 4 else [
            apply_mask(ch, masks[rng.randrange(len(masks))], y) for _ in range(4)
        ]
        raw = ev.raw([y] + members)
        v.checked += len(members)
        if any(r != raw[0] for r in raw[1:]):
            v.fail({"y": list(y)})
    return v


def verify_canonicalization(ch: SymmetricChannel, n_exp: int, i: int) -> Verdict:
    """Canonical vectors are equivalent to their sources and give the full-domain class count."""
    _require_bsc(ch)
    N = 1 << n_exp
    v = Verdict("canonicalization")
    table = _prob_table(ch, N, i)
    for y, raw in table.items():
        c = bsc_canonicalize(ch, i, y)
        v.checked += 1
        if any(c[i:]) or table[c] != raw:
            v.fail({"y": list(y), "canonical": list(c)})
    full = len(set(table.values()))
    canon = count_classes(ch, n_exp, i, CANONICAL)
    v.details = {"full_count": full, "canonical_count": canon}
    if full != canon:
        v.fail({"full_count": full, "canonical_count": canon})
    return v


def lift(y: Sequence[int], companion: int) -> tuple:
    """``(y, c, c, ..., c)`` of twice the length."""
    return tuple(y) + (companion,) * len(y)


def verify_doubling(ch: SymmetricChannel, n_exp: int, i: int, companion: int | None = None) -> Verdict:
    """Equivalent pairs at ``(N, i)`` stay equivalent at ``(2N, i)`` after lifting.

    ``companion=None`` tests every alphabet symbol; results per symbol are in
    ``details["companions"]``.
    """
    N = 1 << n_exp
    if not 0 <= i <= N:
        raise ValueError(f"bit index {i} outside 0..{N}")
    table = _prob_table(ch, N, i)
    classes: dict = {}
    for y, raw in table.items():
        classes.setdefault(raw, []).append(y)
    v = Verdict("doubling", details={"companions": {}})
    ev2 = evaluator(ch, 2 * N, i)
    symbols = range(ch.size) if companion is None else [companion]
    for c in symbols:
        ok = True
        for members in classes.values():
            raw = ev2.raw([lift(y, c) for y in members])
            v.checked += len(members) - 1
            if any(r != raw[0] for r in raw[1:]):
                ok = False
                bad = next(m for m, r in zip(members, raw) if r != raw[0])
                v.fail({"companion": ch.symbols[c], "y": list(members[0]), "v": list(bad)})
        v.details["companions"][ch.symbols[c]] = ok
    return v


def verify_blocklength_invariance(
    ch: SymmetricChannel, i: int, n_exp_small: int, n_exp_large: int, workers: int = 1
) -> Verdict:
    """Class counts for bit ``i`` agree between two block lengths."""
    _require_bsc(ch)
    small = count_classes(ch, n_exp_small, i, workers=workers)
    large = count_classes(ch, n_exp_large, i, workers=workers)
    v = Verdict("blocklength", checked=1, details={"i": i, "small": small, "large": large})
    if small != large:
        v.fail({"i": i, "small": small, "large": large})
    return v


def random_symmetric_channel(rng: random.Random, max_size: int = 4, denominator: int = 97) -> SymmetricChannel:
    """A random valid symmetric channel with rational probabilities."""
    from .channel import make_channel

    size = rng.randint(2, max_size)
    n_pairs = rng.randint(1, size // 2)
    n_self = size - 2 * n_pairs
    raw = [rng.randint(1, denominator) for _ in range(n_self + 2 * n_pairs)]
    total = sum(raw[:n_self]) + sum(raw[n_self:])
    w0 = [Fraction(r, total) for r in raw]
    conj = list(range(n_self))
    for k in range(n_pairs):
        a, b = n_self + 2 * k, n_self + 2 * k + 1
        conj += [b, a]
    w1 = [w0[c] for c in conj]
    return make_channel([f"s{k}" for k in range(size)], w0, w1, conj, name=f"random{size}")


__all__ = [
    "CANONICAL",
    "FULL",
    "ClassReport",
    "EquivalenceClass",
    "Verdict",
    "bsc_canonicalize",
    "class_table",
    "count_classes",
    "enumerate_classes",
    "lift",
    "prob_equivalent",
    "random_symmetric_channel",
    "symmetry_orbit",
    "verify_blocklength_invariance",
    "verify_canonicalization",
    "verify_doubling",
    "verify_orbits",
    "verify_permutation_theorem",
    "verify_permutations",
]

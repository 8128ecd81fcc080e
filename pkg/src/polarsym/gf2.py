"""GF(2) matrices for the polar transform.

Rows are stored bit-packed in Python ints: bit ``j`` of a row is column ``j``
(0-based).  Public functions take and return bit vectors as tuples of 0/1.
Row indices in :func:`tail_rows` follow the 1-based convention
``A(N, i) = rows i+1..N of G_N``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from . import limits as _limits

BitVector = tuple  # tuple of 0/1 ints


def pack(bits: Sequence[int]) -> int:
    out = 0
    for j, b in enumerate(bits):
        if b not in (0, 1):
            raise ValueError(f"entry {j} is {b!r}, expected 0 or 1")
        if b:
            out |= 1 << j
    return out


def unpack(word: int, length: int) -> BitVector:
    return tuple((word >> j) & 1 for j in range(length))


@dataclass(frozen=True)
class BitMatrix:
    """Dense binary matrix with bit-packed rows."""

    ncols: int
    rows: tuple  # tuple[int, ...]

    def __post_init__(self):
        if self.ncols <= 0:
            raise ValueError("ncols must be positive")
        limit = 1 << self.ncols
        for r in self.rows:
            if not 0 <= r < limit:
                raise ValueError("row has bits outside the column range")

    @classmethod
    def from_lists(cls, rows: Sequence[Sequence[int]], ncols: int | None = None) -> "BitMatrix":
        rows = [list(r) for r in rows]
        if ncols is None:
            if not rows:
                raise ValueError("ncols required for a matrix with no rows")
            ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(ncols, tuple(pack(r) for r in rows))

    @classmethod
    def from_array(cls, arr) -> "BitMatrix":
        arr = np.asarray(arr)
        if arr.ndim != 2:
            raise ValueError("expected a 2-D array")
        return cls.from_lists(arr.tolist(), arr.shape[1])

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple:
        return (self.nrows, self.ncols)

    def row(self, k: int) -> BitVector:
        return unpack(self.rows[k], self.ncols)

    def to_lists(self) -> list:
        return [list(self.row(k)) for k in range(self.nrows)]

    def to_array(self) -> np.ndarray:
        return np.array(self.to_lists(), dtype=np.uint8).reshape(self.nrows, self.ncols)

    def __repr__(self) -> str:
        body = "; ".join("".join(map(str, self.row(k))) for k in range(self.nrows))
        return f"BitMatrix({self.nrows}x{self.ncols}: [{body}])"


def kron_power(n: int) -> BitMatrix:
    """``F^{(x)n}`` over GF(2) with ``F = [[1,0],[1,1]]``; size ``2^n``."""
    if n < 0:
        raise ValueError("exponent must be non-negative")
    _limits.check("block exponent", n, _limits.current().max_block_exp)
    rows = [1]
    size = 1
    for _ in range(n):
        # F (x) G = [[G, 0], [G, G]]
        rows = rows + [r | (r << size) for r in rows]
        size *= 2
    return BitMatrix(size, tuple(rows))


def generator(N: int) -> BitMatrix:
    return kron_power(block_exponent(N))


def block_exponent(N: int) -> int:
    if N < 1 or N & (N - 1):
        raise ValueError(f"block length {N} is not a power of two")
    return N.bit_length() - 1


def tail_rows(G: BitMatrix, i: int) -> BitMatrix:
    """``A(N, i)``: rows ``i+1..N`` (1-based) of ``G``."""
    if not 0 <= i <= G.nrows:
        raise IndexError(f"row index {i} outside 0..{G.nrows}")
    return BitMatrix(G.ncols, G.rows[i:])


def _echelon(rows: Sequence[int]) -> list:
    """Fully reduced row-echelon basis, sorted by pivot (lowest set bit)."""
    basis: dict = {}
    for r in rows:
        for piv, b in basis.items():
            if (r >> piv) & 1:
                r ^= b
        if not r:
            continue
        piv = (r & -r).bit_length() - 1
        for p in list(basis):
            if (basis[p] >> piv) & 1:
                basis[p] ^= r
        basis[piv] = r
    return [basis[p] for p in sorted(basis)]


def rank(A: BitMatrix) -> int:
    return len(_echelon(A.rows))


def basis(A: BitMatrix) -> BitMatrix:
    return BitMatrix(A.ncols, tuple(_echelon(A.rows)))


def _independent_rows(A: BitMatrix) -> list:
    rows = list(A.rows)
    return rows if len(_echelon(rows)) == len(rows) else _echelon(rows)


def row_space_words(A: BitMatrix, start: int = 0, stop: int | None = None) -> Iterator[int]:
    """Packed row-space elements in Gray-code order, indices ``[start, stop)``.

    Element ``k`` is the sum of the basis rows selected by ``gray(k)``, so any
    index range can be enumerated independently of the others.
    """
    gens = _independent_rows(A)
    total = 1 << len(gens)
    _limits.check("row space", total, _limits.current().max_rowspace)
    stop = total if stop is None else min(stop, total)
    if start >= stop:
        return
    g = start ^ (start >> 1)
    word = 0
    for t, r in enumerate(gens):
        if (g >> t) & 1:
            word ^= r
    yield word
    for k in range(start + 1, stop):
        t = (k & -k).bit_length() - 1
        word ^= gens[t]
        yield word


def row_space(A: BitMatrix, start: int = 0, stop: int | None = None) -> Iterator[BitVector]:
    """All ``2^rank(A)`` distinct GF(2) combinations of the rows of ``A``."""
    for w in row_space_words(A, start, stop):
        yield unpack(w, A.ncols)


def row_space_size(A: BitMatrix) -> int:
    return 1 << rank(A)


def row_space_array(A: BitMatrix) -> np.ndarray:
    """The row space as a ``(2^rank, ncols)`` uint8 array (binary order)."""
    gens = _independent_rows(A)
    _limits.check("row space", 1 << len(gens), _limits.current().max_rowspace)
    out = np.zeros((1, A.ncols), dtype=np.uint8)
    for r in gens:
        vec = np.array(unpack(r, A.ncols), dtype=np.uint8)
        out = np.concatenate([out, out ^ vec], axis=0)
    return out


def vec_mat(u: Sequence[int], A: BitMatrix) -> BitVector:
    """Row vector times matrix over GF(2)."""
    if len(u) != A.nrows:
        raise ValueError(f"vector length {len(u)} != {A.nrows} rows")
    word = 0
    for bit, r in zip(u, A.rows):
        if bit:
            word ^= r
    return unpack(word, A.ncols)


def solve_tail(A: BitMatrix, i: int, target: Sequence[int]) -> BitVector:
    """Coefficients ``u`` with ``(u A)`` restricted to columns ``i+1..N`` equal to ``target``.

    ``A`` must be ``A(N, i)``, whose block on columns ``i+1..N`` is unit lower
    triangular; the system is solved by substitution from the last column.
    """
    k = A.nrows
    if A.ncols - i != k:
        raise ValueError("A is not a tail block A(N, i)")
    if len(target) != k:
        raise ValueError(f"target length {len(target)} != {k}")
    tail = [r >> i for r in A.rows]
    for c, r in enumerate(tail):
        if not (r >> c) & 1 or r >> (c + 1):
            raise ValueError("tail block is not unit lower triangular")
    u = [0] * k
    for c in range(k - 1, -1, -1):
        acc = target[c]
        for r in range(c + 1, k):
            if u[r] and (tail[r] >> c) & 1:
                acc ^= 1
        u[c] = acc
    return tuple(u)


def rowspace_equal(A: BitMatrix, B: BitMatrix) -> bool:
    if A.ncols != B.ncols:
        raise ValueError("column counts differ")
    return _echelon(A.rows) == _echelon(B.rows)


def permute_vector(v: Sequence, perm: Sequence[int]) -> tuple:
    """``v[perm[k]]`` at position ``k`` (the map ``v -> vP``)."""
    return tuple(v[p] for p in perm)


def permute_columns(A: BitMatrix, perm: Sequence[int]) -> BitMatrix:
    _check_perm(perm, A.ncols)
    return BitMatrix(A.ncols, tuple(pack(permute_vector(A.row(k), perm)) for k in range(A.nrows)))


def _check_perm(perm: Sequence[int], n: int) -> None:
    if sorted(perm) != list(range(n)):
        raise ValueError(f"not a permutation of {n} positions: {perm!r}")


def is_unit_lower_triangular(A: BitMatrix) -> bool:
    if A.nrows != A.ncols:
        return False
    return all((r >> k) & 1 and not r >> (k + 1) for k, r in enumerate(A.rows))

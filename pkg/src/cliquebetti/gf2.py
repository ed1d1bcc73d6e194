"""Bit-packed GF(2) matrices, rank by word-wide XOR elimination, and an
incremental echelon basis for single-row insertion."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import MemoryBudgetExceeded

WORD_BITS = 64
DEFAULT_MEMORY_BUDGET = 2 * 1024**3


def words_for(cols: int) -> int:
    return (cols + WORD_BITS - 1) // WORD_BITS


def check_budget(rows: int, cols: int, budget: int | None = None) -> None:
    budget = DEFAULT_MEMORY_BUDGET if budget is None else budget
    need = rows * words_for(cols) * 8
    if need > budget:
        raise MemoryBudgetExceeded(
            f"{rows}x{cols} GF(2) matrix needs {need} bytes, budget is {budget}"
        )


def _pack_indices(indices: Iterable[int], words: int) -> np.ndarray:
    row = np.zeros(words, dtype=np.uint64)
    for j in indices:
        row[j // WORD_BITS] ^= np.uint64(1) << np.uint64(j % WORD_BITS)
    return row


def _words_to_int(words: np.ndarray) -> int:
    return int.from_bytes(np.ascontiguousarray(words, dtype="<u8").tobytes(), "little")


def _int_to_words(value: int, words: int) -> np.ndarray:
    return np.frombuffer(value.to_bytes(words * 8, "little"), dtype="<u8").astype(np.uint64)


@dataclass(frozen=True, eq=False)
class Gf2Vector:
    length: int
    bits: np.ndarray

    @classmethod
    def from_indices(cls, length: int, indices: Iterable[int]) -> Gf2Vector:
        idx = list(indices)
        if any(not 0 <= j < length for j in idx):
            raise IndexError(f"index out of range for vector of length {length}")
        return cls(length, _pack_indices(idx, words_for(length)))

    @classmethod
    def from_int(cls, length: int, value: int) -> Gf2Vector:
        if value >> length:
            raise ValueError("value has bits beyond the vector length")
        return cls(length, _int_to_words(value, words_for(length)))

    def to_int(self) -> int:
        return _words_to_int(self.bits)

    def support(self) -> list[int]:
        value = self.to_int()
        return [j for j in range(self.length) if (value >> j) & 1]

    def __xor__(self, other: Gf2Vector) -> Gf2Vector:
        if self.length != other.length:
            raise ValueError("length mismatch")
        return Gf2Vector(self.length, self.bits ^ other.bits)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Gf2Vector):
            return NotImplemented
        return self.length == other.length and np.array_equal(self.bits, other.bits)

    def __bool__(self) -> bool:
        return bool(self.bits.any())


@dataclass(frozen=True, eq=False)
class Gf2Matrix:
    """``rows x cols`` matrix over GF(2), row-major, 64 columns per uint64 word.

    Column ``j`` of row ``i`` is bit ``j % 64`` of ``data[i, j // 64]``; padding
    bits past ``cols`` are always zero.
    """

    rows: int
    cols: int
    data: np.ndarray

    def __post_init__(self) -> None:
        if self.data.shape != (self.rows, words_for(self.cols)) or self.data.dtype != np.uint64:
            raise ValueError("packed data has the wrong shape or dtype")

    @classmethod
    def zeros(cls, rows: int, cols: int, budget: int | None = None) -> Gf2Matrix:
        check_budget(rows, cols, budget)
        return cls(rows, cols, np.zeros((rows, words_for(cols)), dtype=np.uint64))

    @classmethod
    def from_row_indices(
        cls, rows: Sequence[Iterable[int]], cols: int, budget: int | None = None
    ) -> Gf2Matrix:
        """Build from the column indices of the ones in each row."""
        m = cls.zeros(len(rows), cols, budget)
        for i, idx in enumerate(rows):
            for j in idx:
                if not 0 <= j < cols:
                    raise IndexError(f"column {j} out of range for {cols} columns")
                m.data[i, j // WORD_BITS] ^= np.uint64(1) << np.uint64(j % WORD_BITS)
        return m

    @classmethod
    def from_dense(cls, dense: np.ndarray) -> Gf2Matrix:
        dense = np.asarray(dense).astype(bool)
        if dense.ndim != 2:
            raise ValueError("expected a 2-d array")
        rows, cols = dense.shape
        words = words_for(cols)
        padded = np.zeros((rows, words * WORD_BITS), dtype=bool)
        padded[:, :cols] = dense
        packed = np.packbits(padded, axis=1, bitorder="little")
        data = packed.view("<u8").astype(np.uint64).reshape(rows, words)
        return cls(rows, cols, data)

    def to_dense(self) -> np.ndarray:
        raw = np.ascontiguousarray(self.data, dtype="<u8").view(np.uint8)
        bits = np.unpackbits(raw, axis=1, bitorder="little")
        return bits[:, : self.cols].astype(np.uint8)

    def get(self, i: int, j: int) -> int:
        return int((self.data[i, j // WORD_BITS] >> np.uint64(j % WORD_BITS)) & np.uint64(1))

    def row_int(self, i: int) -> int:
        return _words_to_int(self.data[i])

    def row_ints(self) -> list[int]:
        return [self.row_int(i) for i in range(self.rows)]

    def row_vector(self, i: int) -> Gf2Vector:
        return Gf2Vector(self.cols, self.data[i].copy())

    def transpose(self) -> Gf2Matrix:
        return Gf2Matrix.from_dense(self.to_dense().T)

    def matmul(self, other: Gf2Matrix) -> Gf2Matrix:
        """Product over GF(2)."""
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        a = self.to_dense().astype(np.int64)
        b = other.to_dense().astype(np.int64)
        return Gf2Matrix.from_dense((a @ b) & 1)

    @property
    def nbytes(self) -> int:
        return int(self.data.nbytes)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Gf2Matrix):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and np.array_equal(
            self.data, other.data
        )


def rank_gf2(m: Gf2Matrix) -> int:
    """Rank by forward elimination on a private copy of the packed rows."""
    a = m.data.copy()
    rows = m.rows
    rank = 0
    for col in range(m.cols):
        if rank == rows:
            break
        w, bit = divmod(col, WORD_BITS)
        mask = np.uint64(1) << np.uint64(bit)
        hits = np.flatnonzero(a[rank:, w] & mask)
        if hits.size == 0:
            continue
        p = rank + int(hits[0])
        if p != rank:
            a[[rank, p]] = a[[p, rank]]
        below = rank + 1 + np.flatnonzero(a[rank + 1 :, w] & mask)
        if below.size:
            a[below] ^= a[rank]
        rank += 1
    return rank


class Gf2Basis:
    """Echelon basis kept as ``{leading bit: row}`` over Python ints.

    Leading bits are distinct, so reducing a new row needs at most one XOR per
    stored row and costs O(rank x words) overall.
    """

    def __init__(self) -> None:
        self._rows: dict[int, int] = {}

    def __len__(self) -> int:
        return len(self._rows)

    @property
    def rank(self) -> int:
        return len(self._rows)

    def reduce(self, row: int) -> int:
        while row:
            pivot = self._rows.get(row.bit_length() - 1)
            if pivot is None:
                return row
            row ^= pivot
        return 0

    def contains(self, row: int) -> bool:
        """True if ``row`` lies in the span of the basis."""
        return self.reduce(row) == 0

    def insert(self, row: int) -> bool:
        """Add ``row``; return True iff it was independent of the basis."""
        row = self.reduce(row)
        if row == 0:
            return False
        self._rows[row.bit_length() - 1] = row
        return True


def rank_of_rows(rows: Iterable[int]) -> int:
    basis = Gf2Basis()
    for r in rows:
        basis.insert(r)
    return basis.rank

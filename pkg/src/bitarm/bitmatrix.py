"""Bit-packed Boolean matrix used by the miner.

Columns are stored as Python ints (bit ``j`` is row ``j``), which gives exact
popcounts via ``int.bit_count`` and zero padding for free.  Pruned rows and
columns are masked out rather than physically removed so indices stay stable.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np


class BitMatrixError(Exception):
    pass


class IndexOutOfRange(BitMatrixError, IndexError):
    pass


class DeadColumn(BitMatrixError):
    pass


class DeadRow(BitMatrixError):
    pass


class AlreadyDead(BitMatrixError):
    pass


class DuplicateIndex(BitMatrixError, ValueError):
    pass


@dataclass(frozen=True)
class BitVector:
    bits: int
    length: int

    def __post_init__(self):
        if self.bits < 0 or self.bits >> self.length:
            raise ValueError("bits set beyond vector length")

    def popcount(self) -> int:
        return self.bits.bit_count()

    def __and__(self, other: "BitVector") -> "BitVector":
        if self.length != other.length:
            raise ValueError("length mismatch")
        return BitVector(self.bits & other.bits, self.length)

    def __getitem__(self, j: int) -> int:
        if not 0 <= j < self.length:
            raise IndexError(j)
        return (self.bits >> j) & 1

    def to_list(self) -> list[int]:
        return [(self.bits >> j) & 1 for j in range(self.length)]

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> "BitVector":
        value = 0
        n = 0
        for j, b in enumerate(bits):
            if b:
                value |= 1 << j
            n = j + 1
        return cls(value, n)

    @classmethod
    def from_string(cls, s: str) -> "BitVector":
        """``"1010"`` means rows 0 and 2 are set."""
        return cls.from_bits(int(c) for c in s)


def pack_column(col: np.ndarray) -> int:
    """Pack a 1-D boolean array into an int with bit j = col[j]."""
    if col.size == 0:
        return 0
    packed = np.packbits(np.asarray(col, dtype=bool), bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")


class BitMatrix:
    def __init__(self, columns: Sequence[int], n_rows: int,
                 row_ids: Sequence[str] | None = None,
                 col_ids: Sequence[str] | None = None):
        self.n_rows = n_rows
        self.n_cols = len(columns)
        full = (1 << n_rows) - 1
        for c in columns:
            if c < 0 or c & ~full:
                raise ValueError("column has bits beyond n_rows")
        self.columns = list(columns)
        self.row_ids = list(row_ids) if row_ids is not None else [f"r{j}" for j in range(n_rows)]
        self.col_ids = list(col_ids) if col_ids is not None else [f"c{i}" for i in range(self.n_cols)]
        if len(self.row_ids) != n_rows or len(self.col_ids) != self.n_cols:
            raise ValueError("id lists do not match matrix dimensions")
        self.live_rows = full
        self.live_cols = [True] * self.n_cols

    @classmethod
    def from_array(cls, arr, row_ids=None, col_ids=None) -> "BitMatrix":
        a = np.asarray(arr, dtype=bool)
        if a.ndim != 2:
            raise ValueError("expected a 2-D array")
        cols = [pack_column(a[:, i]) for i in range(a.shape[1])]
        return cls(cols, a.shape[0], row_ids, col_ids)

    @classmethod
    def from_transactions(cls, transactions: Sequence[Iterable[int]], n_items: int,
                          **ids) -> "BitMatrix":
        cols = [0] * n_items
        for j, t in enumerate(transactions):
            for i in t:
                cols[i] |= 1 << j
        return cls(cols, len(transactions), **ids)

    def copy(self) -> "BitMatrix":
        other = BitMatrix(self.columns, self.n_rows, self.row_ids, self.col_ids)
        other.live_rows = self.live_rows
        other.live_cols = list(self.live_cols)
        return other

    def to_array(self) -> np.ndarray:
        """Dense view of the raw bits, ignoring prune masks."""
        out = np.zeros((self.n_rows, self.n_cols), dtype=bool)
        for i, c in enumerate(self.columns):
            for j in range(self.n_rows):
                out[j, i] = (c >> j) & 1
        return out

    def transactions(self) -> list[frozenset[int]]:
        """Row view over all (unpruned) data: one item-index set per row."""
        rows: list[set[int]] = [set() for _ in range(self.n_rows)]
        for i, c in enumerate(self.columns):
            while c:
                low = c & -c
                rows[low.bit_length() - 1].add(i)
                c ^= low
        return [frozenset(r) for r in rows]

    # -- checks -------------------------------------------------------------

    def _check_col(self, i: int) -> None:
        if not 0 <= i < self.n_cols:
            raise IndexOutOfRange(f"column {i} out of range")
        if not self.live_cols[i]:
            raise DeadColumn(f"column {i} has been pruned")

    def _check_row(self, j: int) -> None:
        if not 0 <= j < self.n_rows:
            raise IndexOutOfRange(f"row {j} out of range")
        if not (self.live_rows >> j) & 1:
            raise DeadRow(f"row {j} has been pruned")

    def is_live_col(self, i: int) -> bool:
        return self.live_cols[i]

    def is_live_row(self, j: int) -> bool:
        return bool((self.live_rows >> j) & 1)

    def live_col_indices(self) -> list[int]:
        return [i for i, alive in enumerate(self.live_cols) if alive]

    @property
    def n_live_rows(self) -> int:
        return self.live_rows.bit_count()

    # -- sums and AND ---------------------------------------------------------

    def column_vector(self, i: int) -> BitVector:
        self._check_col(i)
        return BitVector(self.columns[i] & self.live_rows, self.n_rows)

    def column_sum(self, i: int) -> int:
        self._check_col(i)
        return (self.columns[i] & self.live_rows).bit_count()

    def row_sum(self, j: int) -> int:
        self._check_row(j)
        return sum(1 for i, c in enumerate(self.columns)
                   if self.live_cols[i] and (c >> j) & 1)

    def row_sums(self) -> list[int]:
        """Row sums over live columns for every row; dead rows report 0."""
        sums = [0] * self.n_rows
        for i, c in enumerate(self.columns):
            if not self.live_cols[i]:
                continue
            c &= self.live_rows
            while c:
                low = c & -c
                sums[low.bit_length() - 1] += 1
                c ^= low
        return sums

    def and_columns(self, idxs: Sequence[int]) -> BitVector:
        if len(idxs) < 2:
            raise ValueError("and_columns needs at least two columns")
        if len(set(idxs)) != len(idxs):
            raise DuplicateIndex(f"duplicate column index in {list(idxs)}")
        acc = self.live_rows
        for i in idxs:
            self._check_col(i)
            acc &= self.columns[i]
        return BitVector(acc, self.n_rows)

    def support_count(self, idxs: Sequence[int]) -> int:
        """Popcount of the AND of ``idxs`` over live rows (any size >= 1)."""
        acc = self.live_rows
        for i in idxs:
            self._check_col(i)
            acc &= self.columns[i]
        return acc.bit_count()

    # -- pruning --------------------------------------------------------------

    def prune_column(self, i: int) -> "BitMatrix":
        if not 0 <= i < self.n_cols:
            raise IndexOutOfRange(f"column {i} out of range")
        if not self.live_cols[i]:
            raise AlreadyDead(f"column {i} already pruned")
        self.live_cols[i] = False
        return self

    def prune_row(self, j: int) -> "BitMatrix":
        if not 0 <= j < self.n_rows:
            raise IndexOutOfRange(f"row {j} out of range")
        if not (self.live_rows >> j) & 1:
            raise AlreadyDead(f"row {j} already pruned")
        self.live_rows &= ~(1 << j)
        return self

    def __repr__(self):
        return (f"BitMatrix({self.n_live_rows}/{self.n_rows} rows, "
                f"{sum(self.live_cols)}/{self.n_cols} cols)")

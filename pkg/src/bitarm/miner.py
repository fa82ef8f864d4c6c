"""Single-scan Boolean-matrix frequent itemset miner.

Level-wise mining over a BitMatrix: frequent items come from column sums,
k-itemsets from ANDing k live columns, and between levels the matrix is shrunk
by dropping columns that cannot extend to a longer itemset and rows too short
to hold one.
"""
from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator, Sequence

from .bitmatrix import BitMatrix

log = logging.getLogger(__name__)

Itemset = tuple[int, ...]


class EmptyInput(ValueError):
    pass


def to_absolute_support(min_support: float, n_rows: int) -> int:
    """ceil(min_support * n_rows), never below 1."""
    if n_rows < 1:
        raise ValueError("n_rows must be >= 1")
    # round first so e.g. 0.2 * 25 = 5.000000000000001 does not ceil to 6
    return max(1, math.ceil(round(min_support * n_rows, 9)))


@dataclass(frozen=True)
class MiningConfig:
    min_support: float
    max_k: int | None = None
    strict_paper: bool = False
    workers: int = 1

    def __post_init__(self):
        if not 0 < self.min_support <= 1:
            raise ValueError("min_support must lie in (0, 1]")
        if self.max_k is not None and self.max_k < 1:
            raise ValueError("max_k must be >= 1")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")

    def new_support(self, n_rows: int) -> int:
        return to_absolute_support(self.min_support, n_rows)


@dataclass
class MiningStats:
    scans: int = 0
    candidates: int = 0
    peak_level_candidates: int = 0
    levels: int = 0
    trace: list[dict] = field(default_factory=list)


@dataclass
class FrequentItemsets:
    """Leveled catalog: ``levels[k-1]`` maps sorted k-itemsets to support counts."""

    levels: list[dict[Itemset, int]]
    n_rows: int
    new_support: int
    item_ids: tuple[str, ...] = ()

    def __post_init__(self):
        while self.levels and not self.levels[-1]:
            self.levels.pop()
        self.levels = [dict(sorted(level.items())) for level in self.levels]

    @classmethod
    def from_counts(cls, counts: dict[Itemset, int], n_rows: int, new_support: int,
                    item_ids: Sequence[str] = ()) -> "FrequentItemsets":
        depth = max((len(s) for s in counts), default=0)
        levels: list[dict[Itemset, int]] = [{} for _ in range(depth)]
        for s, c in counts.items():
            levels[len(s) - 1][tuple(sorted(s))] = c
        return cls(levels, n_rows, new_support, tuple(item_ids))

    def as_dict(self) -> dict[Itemset, int]:
        return {s: c for level in self.levels for s, c in level.items()}

    def items(self) -> Iterator[tuple[Itemset, int]]:
        for level in self.levels:
            yield from level.items()

    def level(self, k: int) -> dict[Itemset, int]:
        return self.levels[k - 1] if 0 < k <= len(self.levels) else {}

    @property
    def max_size(self) -> int:
        return len(self.levels)

    def support_count(self, itemset: Sequence[int]) -> int:
        key = tuple(sorted(itemset))
        return self.level(len(key))[key]

    def __contains__(self, itemset) -> bool:
        key = tuple(sorted(itemset))
        return key in self.level(len(key))

    def __len__(self) -> int:
        return sum(len(level) for level in self.levels)

    def __eq__(self, other):
        if not isinstance(other, FrequentItemsets):
            return NotImplemented
        return self.as_dict() == other.as_dict()

    def names(self, itemset: Itemset) -> tuple[str, ...]:
        if not self.item_ids:
            return tuple(str(i) for i in itemset)
        return tuple(self.item_ids[i] for i in itemset)


def _closed_under_subsets(cand: Itemset, prev: dict[Itemset, int]) -> bool:
    return all(cand[:i] + cand[i + 1:] in prev for i in range(len(cand)))


def _candidates(b: BitMatrix, k: int, prev: dict[Itemset, int],
                strict: bool) -> Iterator[Itemset]:
    for cand in combinations(b.live_col_indices(), k):
        if strict or _closed_under_subsets(cand, prev):
            yield cand


def _count_chunk(columns: list[int], live_rows: int, chunk: list[Itemset],
                 threshold: int) -> list[tuple[Itemset, int]]:
    kept = []
    for cand in chunk:
        acc = live_rows
        for i in cand:
            acc &= columns[i]
        n = acc.bit_count()
        if n >= threshold:
            kept.append((cand, n))
    return kept


def _count_level(b: BitMatrix, cands: list[Itemset], threshold: int,
                 workers: int) -> dict[Itemset, int]:
    if workers == 1 or len(cands) < 2 * workers:
        return dict(_count_chunk(b.columns, b.live_rows, cands, threshold))
    size = -(-len(cands) // workers)
    chunks = [cands[i:i + size] for i in range(0, len(cands), size)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        parts = pool.map(lambda ch: _count_chunk(b.columns, b.live_rows, ch, threshold), chunks)
        out: dict[Itemset, int] = {}
        for part in parts:
            out.update(part)
    return dict(sorted(out.items()))


def _prune_short_rows(b: BitMatrix, min_len: int) -> int:
    pruned = 0
    for j, s in enumerate(b.row_sums()):
        if b.is_live_row(j) and s < min_len:
            b.prune_row(j)
            pruned += 1
    return pruned


def mine(b: BitMatrix, cfg: MiningConfig, stats: MiningStats | None = None) -> FrequentItemsets:
    """Return every itemset whose support count in ``b`` is >= new_support.

    ``b`` itself is left untouched; pruning happens on a private copy.  The
    absolute threshold is fixed against the original row count, so dropping
    rows never changes a surviving itemset's count.
    """
    if b.n_rows == 0 or b.n_cols == 0:
        raise EmptyInput("bit matrix has no rows or no columns")
    stats = stats if stats is not None else MiningStats()
    b = b.copy()
    threshold = cfg.new_support(b.n_rows)
    stats.scans += 1

    f1: dict[Itemset, int] = {}
    for i in b.live_col_indices():
        s = b.column_sum(i)
        if s >= threshold:
            f1[(i,)] = s
        else:
            b.prune_column(i)
    stats.candidates += b.n_cols
    stats.peak_level_candidates = max(stats.peak_level_candidates, b.n_cols)
    dropped_rows = _prune_short_rows(b, 2)
    stats.trace.append({"k": 1, "frequent": len(f1), "live_cols": sum(b.live_cols),
                        "live_rows": b.n_live_rows, "pruned_rows": dropped_rows})
    levels = [f1]

    k = 2
    while len(levels[-1]) > k - 1:
        if cfg.max_k is not None and k > cfg.max_k:
            break
        cands = list(_candidates(b, k, levels[-1], cfg.strict_paper))
        stats.candidates += len(cands)
        stats.peak_level_candidates = max(stats.peak_level_candidates, len(cands))
        fk = _count_level(b, cands, threshold, cfg.workers)
        levels.append(fk)

        occurrences = [0] * b.n_cols
        for s in fk:
            for i in s:
                occurrences[i] += 1
        for i in b.live_col_indices():
            if occurrences[i] < k:
                b.prune_column(i)
        dropped_rows = _prune_short_rows(b, k + 1)
        stats.trace.append({"k": k, "candidates": len(cands), "frequent": len(fk),
                            "live_cols": sum(b.live_cols), "live_rows": b.n_live_rows,
                            "pruned_rows": dropped_rows})
        log.debug("level %d: %d candidates, %d frequent", k, len(cands), len(fk))
        k += 1

    stats.levels = sum(1 for level in levels if level)
    return FrequentItemsets(levels, b.n_rows, threshold, tuple(b.col_ids))

"""Reference miners for testing: textbook Apriori and exhaustive enumeration.

Both are intentionally plain.  They work on a row view of the data and share
nothing with the bit-matrix miner beyond the FrequentItemsets container.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .miner import FrequentItemsets, MiningStats


class TooManyItems(ValueError):
    pass


BRUTE_FORCE_MAX_ITEMS = 20


@dataclass
class TransactionSet:
    transactions: list[frozenset[int]]
    n_items: int

    def __post_init__(self):
        self.transactions = [frozenset(t) for t in self.transactions]
        for t in self.transactions:
            if any(not 0 <= i < self.n_items for i in t):
                raise ValueError("item index outside [0, n_items)")

    @classmethod
    def from_bitmatrix(cls, b) -> "TransactionSet":
        return cls(b.transactions(), b.n_cols)

    def __len__(self):
        return len(self.transactions)


def apriori_mine(t: TransactionSet, new_support: int,
                 stats: MiningStats | None = None) -> FrequentItemsets:
    stats = stats if stats is not None else MiningStats()
    counts: dict[frozenset[int], int] = {}

    stats.scans += 1
    item_counts = [0] * t.n_items
    for trans in t.transactions:
        for i in trans:
            item_counts[i] += 1
    stats.candidates += t.n_items
    stats.peak_level_candidates = max(stats.peak_level_candidates, t.n_items)
    current = {frozenset([i]): c for i, c in enumerate(item_counts) if c >= new_support}
    counts.update(current)

    k = 2
    while current:
        prev = sorted(tuple(sorted(s)) for s in current)
        candidates: dict[frozenset[int], int] = {}
        # join step: merge (k-1)-itemsets sharing their first k-2 items
        for a, b in combinations(prev, 2):
            if a[:-1] != b[:-1]:
                continue
            cand = frozenset(a + b[-1:])
            if all(cand - {i} in current for i in cand):
                candidates[cand] = 0
        if not candidates:
            break
        stats.candidates += len(candidates)
        stats.peak_level_candidates = max(stats.peak_level_candidates, len(candidates))
        stats.scans += 1
        for trans in t.transactions:
            if len(trans) < k:
                continue
            for cand in candidates:
                if cand <= trans:
                    candidates[cand] += 1
        current = {s: c for s, c in candidates.items() if c >= new_support}
        counts.update(current)
        k += 1

    stats.levels = max((len(s) for s in counts), default=0)
    return FrequentItemsets.from_counts({tuple(sorted(s)): c for s, c in counts.items()},
                                        len(t), new_support)


def brute_force_mine(t: TransactionSet, new_support: int) -> FrequentItemsets:
    """Count every non-empty itemset by scanning; keep those >= new_support."""
    if t.n_items > BRUTE_FORCE_MAX_ITEMS:
        raise TooManyItems(f"{t.n_items} items exceeds the brute-force limit "
                           f"of {BRUTE_FORCE_MAX_ITEMS}")
    counts = {}
    for size in range(1, t.n_items + 1):
        for itemset in combinations(range(t.n_items), size):
            s = frozenset(itemset)
            c = sum(1 for trans in t.transactions if s <= trans)
            if c >= new_support:
                counts[itemset] = c
    return FrequentItemsets.from_counts(counts, len(t), new_support)


def _all_itemset_counts(t: TransactionSet):
    """Support count of every item mask 1 .. 2^n - 1, one transaction at a time."""
    import numpy as np

    masks = np.arange(1 << t.n_items, dtype=np.int64)
    counts = np.zeros(1 << t.n_items, dtype=np.int64)
    for trans in t.transactions:
        tm = sum(1 << i for i in trans)
        counts += (masks & tm) == masks
    counts[0] = 0
    return masks, counts


def brute_force_rules(t: TransactionSet, new_support: int,
                      min_conf: float) -> dict[tuple[tuple[int, ...], tuple[int, ...]], tuple[int, int]]:
    """Every rule X -> Y (disjoint, non-empty, X u Y frequent, conf >= min_conf).

    Returns ``{(X, Y): (n_xy, n_x)}`` with counts from a row-by-row scan of
    every possible itemset.
    """
    if t.n_items > BRUTE_FORCE_MAX_ITEMS:
        raise TooManyItems(f"{t.n_items} items exceeds the brute-force limit")
    masks, counts = _all_itemset_counts(t)
    items = [tuple(i for i in range(t.n_items) if m >> i & 1) for m in range(1 << t.n_items)]
    rules = {}
    for union in masks[2:]:
        union = int(union)
        n_xy = int(counts[union])
        if n_xy < new_support or union & (union - 1) == 0:
            continue
        subs = masks[((masks & ~union) == 0) & (masks != 0) & (masks != union)]
        ok = subs[n_xy / counts[subs] >= min_conf]
        for lhs in ok.tolist():
            rules[(items[lhs], items[union & ~lhs])] = (n_xy, int(counts[lhs]))
    return rules


def as_sorted_itemsets(sets: Iterable[Sequence[int]]) -> list[tuple[int, ...]]:
    return sorted(tuple(sorted(s)) for s in sets)

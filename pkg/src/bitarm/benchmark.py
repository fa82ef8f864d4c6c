"""Bit-matrix miner vs. Apriori on identical input."""
from __future__ import annotations

import io
import time
import tracemalloc
from dataclasses import dataclass

from .dataset import CountingReader, DiscretizeConfig, discretize, parse_similarity_matrix
from .miner import MiningConfig, MiningStats, mine
from .oracle import TransactionSet, apriori_mine


class OutputMismatch(AssertionError):
    pass


@dataclass
class AlgoReport:
    name: str
    wall_clock_s: float
    peak_alloc_bytes: int
    candidates: int
    peak_level_candidates: int
    database_passes: int
    itemsets: int


@dataclass
class BenchmarkReport:
    n_rows: int
    n_items: int
    min_support: float
    new_support: int
    repeat: int
    source_passes: int
    miner: AlgoReport
    apriori: AlgoReport

    @property
    def miner_faster(self) -> bool:
        return self.miner.wall_clock_s <= self.apriori.wall_clock_s

    @property
    def miner_leaner(self) -> bool:
        return self.miner.peak_alloc_bytes < self.apriori.peak_alloc_bytes


def _peak_alloc(fn) -> int:
    tracemalloc.start()
    try:
        fn()
        _, peak = tracemalloc.get_traced_memory()
    finally:
        tracemalloc.stop()
    return peak


def run_benchmark(csv_text: str, min_support: float, disc: DiscretizeConfig | None = None,
                  repeat: int = 3, strict_paper: bool = False) -> BenchmarkReport:
    reader = CountingReader(io.StringIO(csv_text))
    bits = discretize(parse_similarity_matrix(reader), disc or DiscretizeConfig())
    cfg = MiningConfig(min_support, strict_paper=strict_paper)
    threshold = cfg.new_support(bits.n_rows)
    transactions = TransactionSet.from_bitmatrix(bits)

    m_times, a_times = [], []
    for _ in range(max(1, repeat)):
        m_stats = MiningStats()
        t0 = time.perf_counter()
        mined = mine(bits, cfg, m_stats)
        m_times.append(time.perf_counter() - t0)

        a_stats = MiningStats()
        t0 = time.perf_counter()
        base = apriori_mine(transactions, threshold, a_stats)
        a_times.append(time.perf_counter() - t0)

        if mined.as_dict() != base.as_dict():
            raise OutputMismatch(f"miner found {len(mined)} itemsets, apriori {len(base)}")

    m_peak = _peak_alloc(lambda: mine(bits, cfg))
    a_peak = _peak_alloc(lambda: apriori_mine(transactions, threshold))
    return BenchmarkReport(
        bits.n_rows, bits.n_cols, min_support, threshold, max(1, repeat), reader.passes,
        AlgoReport("bitmatrix", min(m_times), m_peak, m_stats.candidates,
                   m_stats.peak_level_candidates, m_stats.scans, len(mined)),
        AlgoReport("apriori", min(a_times), a_peak, a_stats.candidates,
                   a_stats.peak_level_candidates, a_stats.scans, len(base)),
    )

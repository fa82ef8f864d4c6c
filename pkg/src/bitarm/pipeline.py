"""End-to-end mining run: parse -> discretize -> mine -> rules -> measures."""
from __future__ import annotations

import logging
from dataclasses import asdict, dataclass, field
from typing import TextIO

from .dataset import CountingReader, DiscretizeConfig, discretize, parse_similarity_matrix
from .measures import MEASURES, entropy, variance
from .miner import FrequentItemsets, MiningConfig, MiningStats, mine
from .rules import (AssociationRule, RuleGenConfig, generate_rules, early_exit_skips,
                    rank_by_confidence)

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class RunConfig:
    input: str = "-"
    discretize: DiscretizeConfig = field(default_factory=DiscretizeConfig)
    min_support: float = 0.1
    min_conf: float = 0.5
    top_n: int = 15
    measures: tuple[str, ...] = MEASURES
    entropy_mode: str = "mean"
    format: str = "tsv"
    strict_paper: bool = False
    paper_early_exit: bool = False
    workers: int = 1

    def __post_init__(self):
        # build the downstream configs once so range errors surface here
        self.mining()
        self.rulegen()
        if self.entropy_mode not in ("mean", "sum"):
            raise ValueError("entropy mode must be 'mean' or 'sum'")
        if self.format not in ("tsv", "json"):
            raise ValueError("format must be 'tsv' or 'json'")

    def mining(self) -> MiningConfig:
        return MiningConfig(self.min_support, strict_paper=self.strict_paper,
                            workers=self.workers)

    def rulegen(self) -> RuleGenConfig:
        return RuleGenConfig(self.min_conf, self.top_n)

    def as_header(self) -> dict:
        d = asdict(self)
        d["discretize"] = str(self.discretize)
        d["measures"] = list(self.measures)
        return d


@dataclass
class Diversity:
    entropy: float | None
    variance: float | None
    mode: str


@dataclass
class MineResult:
    config: RunConfig
    n_rows: int
    n_items: int
    itemsets: FrequentItemsets
    rules_total: int
    ranked: list[AssociationRule]
    diversity: Diversity
    source_passes: int
    stats: MiningStats
    skipped_by_early_exit: int | None = None


def rule_set_diversity(rules: list[AssociationRule], mode: str = "mean") -> Diversity:
    supports = [r.support for r in rules]
    h = entropy(supports, mode) if supports and sum(supports) > 0 else None
    v = variance(supports) if len(supports) >= 2 else None
    return Diversity(h, v, mode)


def run_mine(stream: TextIO, cfg: RunConfig) -> MineResult:
    reader = CountingReader(stream)
    matrix = parse_similarity_matrix(reader)
    bits = discretize(matrix, cfg.discretize)
    stats = MiningStats()
    itemsets = mine(bits, cfg.mining(), stats)
    rcfg = cfg.rulegen()
    rules = generate_rules(itemsets, rcfg)
    skipped = None
    if cfg.paper_early_exit:
        skipped = len(early_exit_skips(itemsets, rcfg))
        log.warning("found<2 early exit would skip %d of %d rules", skipped, len(rules))
    ranked = rank_by_confidence(rules, rcfg.top_n)
    return MineResult(cfg, bits.n_rows, bits.n_cols, itemsets, len(rules), ranked,
                      rule_set_diversity(ranked, cfg.entropy_mode), reader.passes, stats,
                      skipped)

"""Association rules from a frequent itemset catalog, plus confidence ranking."""
from __future__ import annotations

import logging
from dataclasses import dataclass

from .bitmatrix import BitMatrix
from .measures import ContingencyCounts, measure_vector
from .miner import FrequentItemsets, Itemset

log = logging.getLogger(__name__)


class UnknownItem(KeyError):
    pass


@dataclass(frozen=True)
class RuleGenConfig:
    min_conf: float
    top_n: int = 15

    def __post_init__(self):
        if not 0 < self.min_conf <= 1:
            raise ValueError("min_conf must lie in (0, 1]")
        if self.top_n < 1:
            raise ValueError("top_n must be >= 1")


class AssociationRule:
    """antecedent -> consequent with its contingency counts.

    ``names`` optionally carries the item identifiers of both sides for
    reporting; it does not take part in equality.
    """

    __slots__ = ("antecedent", "consequent", "counts", "names")

    def __init__(self, antecedent: Itemset, consequent: Itemset, counts: ContingencyCounts,
                 names: tuple[tuple[str, ...], tuple[str, ...]] | None = None):
        if not antecedent or not consequent:
            raise ValueError("both sides of a rule must be non-empty")
        if not set(antecedent).isdisjoint(consequent):
            raise ValueError("antecedent and consequent must be disjoint")
        self.antecedent = antecedent
        self.consequent = consequent
        self.counts = counts
        self.names = names

    def __eq__(self, other):
        if not isinstance(other, AssociationRule):
            return NotImplemented
        return (self.antecedent, self.consequent, self.counts) == \
            (other.antecedent, other.consequent, other.counts)

    def __hash__(self):
        return hash((self.antecedent, self.consequent, self.counts))

    def __repr__(self):
        return f"AssociationRule({self.antecedent}, {self.consequent}, {tuple(self.counts)})"

    @property
    def support(self) -> float:
        return self.counts.n_ab / self.counts.n

    @property
    def confidence(self) -> float:
        return self.counts.n_ab / self.counts.n_a

    @property
    def key(self) -> tuple[Itemset, Itemset]:
        return self.antecedent, self.consequent

    def measures(self) -> dict[str, float]:
        return measure_vector(self.counts)

    def label(self) -> str:
        lhs, rhs = self.names or (tuple(map(str, self.antecedent)),
                                  tuple(map(str, self.consequent)))
        return f"{{{', '.join(lhs)}}} -> {{{', '.join(rhs)}}}"


def _mask(itemset: Itemset) -> int:
    m = 0
    for i in itemset:
        m |= 1 << i
    return m


def _make_rule(f: FrequentItemsets, lhs: Itemset, rhs: Itemset, n_ab: int) -> AssociationRule:
    counts = ContingencyCounts(f.n_rows, f.support_count(lhs), f.support_count(rhs), n_ab)
    return AssociationRule(lhs, rhs, counts, (f.names(lhs), f.names(rhs)))


def generate_rules(f: FrequentItemsets, cfg: RuleGenConfig) -> list[AssociationRule]:
    """All rules f_k -> f_m - f_k with f_k a proper subset of frequent f_m and
    support(f_m) / support(f_k) >= min_conf.

    Antecedents are visited per frequent superset by submask enumeration, so
    each (f_k, f_m) pair is seen exactly once and no rule can be produced twice.
    Output order follows the catalog (superset level, then superset, then
    antecedent mask descending) and is deterministic; use rank_by_confidence
    for a ranked view.
    """
    # both sides of every rule are themselves frequent, so the catalog already
    # holds their item tuples and counts
    by_mask = {}
    count_of = {}
    for s, c in f.items():
        m = _mask(s)
        by_mask[m] = (s, c, f.names(s))
        count_of[m] = c
    min_conf = cfg.min_conf
    n = f.n_rows
    rules = []
    for k in range(2, f.max_size + 1):
        for fm, n_m in f.level(k).items():
            full = _mask(fm)
            sub = (full - 1) & full
            while sub:
                # n_m / n_k >= min_conf  <=>  n_m >= rsup = n_k * min_conf
                if n_m / count_of[sub] >= min_conf:
                    lhs, n_a, lhs_names = by_mask[sub]
                    rhs, n_b, rhs_names = by_mask[full ^ sub]
                    rules.append(AssociationRule(lhs, rhs, ContingencyCounts(n, n_a, n_b, n_m),
                                                 (lhs_names, rhs_names)))
                sub = (sub - 1) & full
    return rules


def early_exit_skips(f: FrequentItemsets, cfg: RuleGenConfig) -> list[AssociationRule]:
    """Rules the literal ``found < 2`` early exit would drop.

    Replays the f_k-outer / f_m-inner loop with the counter: whenever a
    superset candidate fails the rsup test and fewer than two rules were found
    for the current f_k, the rest of that f_k's scan is abandoned.  Nothing is
    emitted from here; callers only log the result.
    """
    catalog = list(f.items())
    complete = {r.key for r in generate_rules(f, cfg)}
    reached = set()
    for fk, n_k in catalog:
        rsup = n_k * cfg.min_conf
        found = 0
        for fm, n_m in catalog:
            if len(fm) <= len(fk):
                continue
            if n_m >= rsup * (1 - 1e-12):
                if set(fk) < set(fm) and n_m / n_k >= cfg.min_conf:
                    found += 1
                    reached.add((fk, tuple(i for i in fm if i not in fk)))
            elif found < 2:
                break
            else:
                found = 0
    skipped = sorted(complete - reached)
    out = []
    for lhs, rhs in skipped:
        out.append(_make_rule(f, lhs, rhs, f.support_count(lhs + rhs)))
    for r in out:
        log.info("early exit would skip %s (conf %.4f)", r.label(), r.confidence)
    return out


def rank_key(rule: AssociationRule):
    return (-rule.confidence, -rule.support, rule.antecedent, rule.consequent)


def rank_by_confidence(rules: list[AssociationRule], top_n: int | None = None) -> list[AssociationRule]:
    ranked = sorted(rules, key=rank_key)
    return ranked if top_n is None else ranked[:top_n]


def contingency(rule: AssociationRule | tuple[Itemset, Itemset], b: BitMatrix) -> ContingencyCounts:
    """Recount a rule's contingency table against the full (unpruned) matrix."""
    lhs, rhs = rule.key if isinstance(rule, AssociationRule) else rule
    everything = (1 << b.n_rows) - 1

    def count(items) -> int:
        acc = everything
        for i in items:
            if not 0 <= i < b.n_cols:
                raise UnknownItem(i)
            acc &= b.columns[i]
        return acc.bit_count()

    return ContingencyCounts(b.n_rows, count(lhs), count(rhs), count(tuple(lhs) + tuple(rhs)))

"""Association rule mining over similarity matrices with a pruned Boolean-matrix miner."""
from .bitmatrix import BitMatrix, BitVector
from .dataset import (DiscretizeConfig, SimilarityMatrix, discretize, discretize_beta,
                      discretize_max_minus_x, parse_similarity_matrix)
from .measures import MEASURES, ContingencyCounts, entropy, measure_vector, variance
from .miner import FrequentItemsets, MiningConfig, mine, to_absolute_support
from .rules import AssociationRule, RuleGenConfig, contingency, generate_rules, rank_by_confidence

__all__ = [
    "BitMatrix", "BitVector", "DiscretizeConfig", "SimilarityMatrix", "discretize",
    "discretize_beta", "discretize_max_minus_x", "parse_similarity_matrix", "MEASURES",
    "ContingencyCounts", "entropy", "measure_vector", "variance", "FrequentItemsets",
    "MiningConfig", "mine", "to_absolute_support", "AssociationRule", "RuleGenConfig",
    "contingency", "generate_rules", "rank_by_confidence",
]

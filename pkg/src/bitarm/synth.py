"""Reproducible synthetic similarity matrices.

Each cell is "high" with probability ``density``.  High cells are drawn from
U[0.8, 1.0] and low cells from U[0, 0.6), rounded to six decimals.  Since the
global maximum HV is at least 0.8 whenever any cell is high, max-minus-25%
(cut at 0.75 HV <= 0.75) and beta thresholds in [0.6, 0.8) both recover the
high/low pattern exactly, so ``density`` is also the expected fraction of ones
in the Boolean matrix.
"""
from __future__ import annotations

import numpy as np

from .dataset import SimilarityMatrix, serialize_similarity_matrix


class BadDensity(ValueError):
    pass


def synth_matrix(seed: int, n_rows: int, n_items: int, density: float) -> SimilarityMatrix:
    if not 0 < density < 1:
        raise BadDensity("density must lie strictly between 0 and 1")
    if n_rows < 1 or n_items < 1:
        raise ValueError("need at least one row and one item")
    rng = np.random.default_rng(seed)
    high = rng.random((n_rows, n_items)) < density
    hi_vals = rng.uniform(0.8, 1.0, size=(n_rows, n_items))
    lo_vals = rng.uniform(0.0, 0.6, size=(n_rows, n_items))
    values = np.round(np.where(high, hi_vals, lo_vals), 6)
    rw = len(str(n_rows - 1))
    cw = len(str(n_items - 1))
    row_ids = [f"p{j:0{rw}d}" for j in range(n_rows)]
    col_ids = [f"g{i:0{cw}d}" for i in range(n_items)]
    return SimilarityMatrix(tuple(row_ids), tuple(col_ids), values)


def synth_csv(seed: int, n_rows: int, n_items: int, density: float) -> str:
    return serialize_similarity_matrix(synth_matrix(seed, n_rows, n_items, density))

"""Recompute the reference discretization column and rule-set diversity numbers.

    python scripts/reproduce_reference_values.py
"""
import math

import numpy as np

from bitarm.dataset import SimilarityMatrix, discretize_max_minus_x, max_minus_x_threshold
from bitarm.measures import entropy, variance

SAMPLE_COLUMN = {"a": (0.096595, 0), "b": (0.123447, 0), "c": (0.291310, 1), "d": (0.126024, 0),
          "e": (0.155819, 0), "f": (0.288394, 1), "g": (0.000000, 0), "h": (0.215049, 1)}
TOP15_SUPPORTS = [0.05, 0.06, 0.07, 0.05, 0.06, 0.07, 0.05, 0.06, 0.07, 0.05,
                   0.07, 0.08, 0.08, 0.09, 0.09]


def main():
    m = SimilarityMatrix(tuple(SAMPLE_COLUMN), ("value",), np.array([[v] for v, _ in SAMPLE_COLUMN.values()]))
    cut = max_minus_x_threshold(m, 25)
    bits = discretize_max_minus_x(m, 25).to_array()[:, 0].astype(int)
    print(f"max-minus-25%: HV = {m.values.max():.6f}, cut = {cut:.7f}")
    print("row  value     printed  computed")
    for (name, (value, printed)), got in zip(SAMPLE_COLUMN.items(), bits):
        flag = "" if printed == got else "   <- differs"
        print(f"{name:>3}  {value:.6f}  {printed:>7}  {got:>8}{flag}")

    print()
    print(f"entropy (sum)  = {entropy(TOP15_SUPPORTS, 'sum'):.4f}")
    print(f"entropy (mean) = {entropy(TOP15_SUPPORTS, 'mean'):.4f}   reported 0.2586")
    v = variance(TOP15_SUPPORTS)
    print(f"variance       = {v:.4e}   truncated to 4 dp: {math.floor(v * 1e4) / 1e4}   reported 0.0001")


if __name__ == "__main__":
    main()

"""Bit-matrix miner vs. Apriori over a small grid of synthetic corpora.

    python scripts/run_benchmark.py [--rows 5000] [--items 50] [--repeat 3]
"""
import argparse

from bitarm.benchmark import run_benchmark
from bitarm.synth import synth_csv


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--rows", type=int, default=5000)
    ap.add_argument("--items", type=int, default=50)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--densities", default="0.2,0.3,0.35")
    ap.add_argument("--supports", default="0.1,0.15")
    args = ap.parse_args()

    print("density\tmin_sup\titemsets\tminer_s\tapriori_s\tspeedup\tminer_peakB\tapriori_peakB"
          "\tapriori_passes")
    for density in map(float, args.densities.split(",")):
        text = synth_csv(args.seed, args.rows, args.items, density)
        for sup in map(float, args.supports.split(",")):
            r = run_benchmark(text, sup, repeat=args.repeat)
            speedup = r.apriori.wall_clock_s / max(r.miner.wall_clock_s, 1e-9)
            print(f"{density}\t{sup}\t{r.miner.itemsets}\t{r.miner.wall_clock_s:.4f}\t"
                  f"{r.apriori.wall_clock_s:.4f}\t{speedup:.1f}x\t{r.miner.peak_alloc_bytes}\t"
                  f"{r.apriori.peak_alloc_bytes}\t{r.apriori.database_passes}")


if __name__ == "__main__":
    main()

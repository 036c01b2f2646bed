"""Majority-vote error of K independent classifiers with base error eps, against K.

Prints the closed-form binomial tail next to a seeded Monte Carlo estimate.
"""

import argparse

import numpy as np

from fusionbench.combiners import binomial_ensemble_error
from fusionbench.rng import make_rng


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--eps", type=float, default=0.35)
    ap.add_argument("--max-k", type=int, default=41)
    ap.add_argument("--trials", type=int, default=200_000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = make_rng(args.seed)
    print(f"{'K':>4}{'EXACT':>12}{'SIMULATED':>12}")
    for K in range(1, args.max_k + 1, 2):
        wrong = rng.random((args.trials, K)) < args.eps
        sim = float(np.mean(wrong.sum(axis=1) > K // 2))
        print(f"{K:>4}{binomial_ensemble_error(args.eps, K):>12.6f}{sim:>12.6f}")


if __name__ == "__main__":
    main()

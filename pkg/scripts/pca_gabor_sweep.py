"""Classifier-3 (Gabor + PCA + nearest neighbour) accuracy against PCA size and Gabor kernel size."""

import argparse

from fusionbench.config import RunConfig
from fusionbench.pipeline import format_sweep, sweep


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--classes", type=int, default=10)
    ap.add_argument("--noise", type=float, default=0.3)
    ap.add_argument("--seed", type=int, default=12)
    ap.add_argument("--pca", default="10,20,40,60,80,100,120,140")
    ap.add_argument("--kernels", default="3,5,7,9,11")
    args = ap.parse_args()

    cfg = RunConfig(seed=args.seed, synth_classes=args.classes, synth_noise=args.noise)
    n_train = 15 * args.classes
    pca_values = [int(v) for v in args.pca.split(",") if int(v) < n_train]  # k is capped at n_train - 1
    print(format_sweep("pca_k", sweep(cfg, "pca_k", pca_values)))
    k_fixed = min(110, n_train - 1)
    kernels = [int(v) for v in args.kernels.split(",")]
    print(format_sweep("gabor_kernel", sweep(cfg.replace(pca_k=k_fixed), "gabor_kernel", kernels)))


if __name__ == "__main__":
    main()

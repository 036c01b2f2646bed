"""Run every combiner on one seeded synthetic corpus and print a comparison table.

Features and the split are computed once and shared across combiners.
"""

import argparse
import time

from fusionbench.combiners import RULE_NAMES
from fusionbench.config import RunConfig
from fusionbench.pipeline import extract_features, format_percent, load_split, run_pipeline


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--classes", type=int, default=10)
    ap.add_argument("--noise", type=float, default=0.3)
    ap.add_argument("--seed", type=int, default=12)
    args = ap.parse_args()

    base = RunConfig(seed=args.seed, synth_classes=args.classes, synth_noise=args.noise)
    data = load_split(base)
    feats = extract_features(base, data)
    print(f"{'COMBINER':<18}{'CLF-1':>9}{'CLF-2':>9}{'CLF-3':>9}{'FUSED':>9}{'KEPT':>7}")
    for name in RULE_NAMES:
        if name == "adaboost" and args.classes != 2:
            continue  # two-class only
        t0 = time.perf_counter()
        r = run_pipeline(base.replace(hypothesis=name), data, feats)
        accs = "".join(f"{format_percent(a):>9}" for a in r.base_accuracies)
        print(f"{name:<18}{accs}{format_percent(r.accuracy):>9}{r.considered:>7}"
              f"   ({time.perf_counter() - t0:.2f}s)")


if __name__ == "__main__":
    main()

"""Bootstrap aggregation with an unweighted majority vote."""

from __future__ import annotations

from collections import Counter
from typing import Callable

import numpy as np

from ..rng import make_rng, spawn_seeds
from .ensemble import EnsembleDecision, best_label


def bootstrap_sample(n: int, seed) -> np.ndarray:
    """n uniform draws with replacement from 0..n-1."""
    if n < 1:
        raise ValueError("bootstrap needs n >= 1")
    return make_rng(seed).integers(0, n, size=n)


def bagging_fit(X, y, B: int, base_learner: Callable, seed) -> list:
    """Train ``base_learner(X_bag, y_bag) -> predict`` on B bootstrap bags."""
    if B < 1:
        raise ValueError("bagging needs at least one bag")
    X, y = np.asarray(X), np.asarray(y)
    predictors = []
    for bag_seed in spawn_seeds(seed, B):
        idx = bootstrap_sample(len(y), bag_seed)
        predictors.append(base_learner(X[idx], y[idx]))
    return predictors


def bagging_predict(predictors, q, n_classes: int | None = None) -> EnsembleDecision:
    votes = Counter(int(p(q)) for p in predictors)
    scores = {lab: float(c) for lab, c in sorted(votes.items())}
    if n_classes is None:
        n_classes = max(scores) + 1
    return EnsembleDecision(best_label(scores), n_classes, scores)


def bagging_train_predict(X, y, B: int, base_learner: Callable, q, seed=0) -> int:
    return bagging_predict(bagging_fit(X, y, B, base_learner, seed), q).label

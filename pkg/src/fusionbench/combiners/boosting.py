"""Binary AdaBoost with pluggable weak learners, and a decision-stump learner."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from ..errors import DegenerateWeakLearner

EPS_MIN = 1e-10


def adaboost_alpha(eps: float) -> float:
    """Hypothesis weight 0.5 * ln((1 - eps) / eps); eps = 0 is clamped to EPS_MIN."""
    eps = max(eps, EPS_MIN)
    return 0.5 * math.log((1 - eps) / eps)


@dataclass
class AdaBoostModel:
    hypotheses: list = field(default_factory=list)
    alphas: list = field(default_factory=list)
    errors: list = field(default_factory=list)
    weights: list = field(default_factory=list)   # D_t for t = 1..T+1
    normalizers: list = field(default_factory=list)

    @property
    def rounds(self) -> int:
        return len(self.alphas)

    def decision_function(self, X) -> np.ndarray:
        X = np.asarray(X, dtype=np.float64)
        total = np.zeros(len(X))
        for h, a in zip(self.hypotheses, self.alphas):
            total += a * h(X)
        return total

    def predict(self, X) -> np.ndarray:
        # sign(0) resolves to +1
        return np.where(self.decision_function(X) >= 0, 1, -1)


def adaboost_train(X, y, T: int, weak_learner: Callable) -> AdaBoostModel:
    """Run up to T boosting rounds.

    ``weak_learner(X, y, D)`` must return a callable ``h`` mapping an (n, d)
    array to predictions in {-1, +1}.  The weighted error of ``h`` under D is
    computed here.  A round with error >= 0.5 asks the learner once more and
    raises :class:`DegenerateWeakLearner` if the retry is no better; a perfect
    hypothesis gets a clamped weight and ends training.
    """
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y)
    if len(y) == 0:
        raise ValueError("AdaBoost needs at least one sample")
    if not np.all(np.isin(y, (-1, 1))):
        raise ValueError("AdaBoost labels must be -1 or +1")
    n = len(y)
    D = np.full(n, 1.0 / n)
    model = AdaBoostModel(weights=[D.copy()])
    for _ in range(T):
        for attempt in range(2):
            h = weak_learner(X, y, D)
            pred = np.asarray(h(X))
            eps = float(D[pred != y].sum())
            if eps < 0.5:
                break
        else:
            raise DegenerateWeakLearner(f"weak learner error {eps:.4f} >= 0.5 after retry")
        alpha = adaboost_alpha(eps)
        unnorm = D * np.exp(-alpha * y * pred)
        Z = float(unnorm.sum())
        D = unnorm / Z
        model.hypotheses.append(h)
        model.alphas.append(alpha)
        model.errors.append(eps)
        model.normalizers.append(Z)
        model.weights.append(D.copy())
        if eps == 0.0:
            break
    return model


@dataclass(frozen=True)
class Stump:
    feature: int
    threshold: float
    polarity: int  # +1: predict +1 when x > threshold

    def __call__(self, X) -> np.ndarray:
        X = np.asarray(X, dtype=np.float64)
        return np.where(X[:, self.feature] > self.threshold, self.polarity, -self.polarity)


def stump_learner(X, y, D) -> Stump:
    """Exhaustive weighted-error-minimising axis-aligned stump.

    Scans features in order and thresholds from low to high; the first
    strictly better candidate is kept.
    """
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y)
    D = np.asarray(D, dtype=np.float64)
    total = float(D.sum())
    best = (math.inf, 0, 0.0, 1)
    for f in range(X.shape[1]):
        order = np.argsort(X[:, f], kind="stable")
        xs, ys, ds = X[order, f], y[order], D[order]
        # error of "predict +1 above threshold" with the threshold below every point
        err0 = float(ds[ys == -1].sum())
        after = err0 + np.cumsum(np.where(ys == 1, ds, -ds))
        valid = np.append(xs[1:] != xs[:-1], True)
        nxt = np.append(xs[1:], np.inf)  # the outermost stumps are constant everywhere
        errs = np.concatenate([[err0], after[valid]])
        thrs = np.concatenate([[-np.inf], ((xs + nxt) / 2)[valid]])
        for e_arr, pol in ((errs, 1), (total - errs, -1)):
            j = int(np.argmin(e_arr))
            if e_arr[j] < best[0]:
                best = (float(e_arr[j]), f, float(thrs[j]), pol)
    return Stump(best[1], best[2], best[3])

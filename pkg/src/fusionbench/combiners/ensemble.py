"""Shared decision type, the global tie rule, and the majority-vote error bound."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from ..errors import InvalidK


@dataclass(frozen=True)
class EnsembleDecision:
    """A fused label, or REJECT encoded as ``n_classes``.

    ``scores`` holds the score of every candidate label the combiner weighed.
    """

    label: int
    n_classes: int
    scores: dict = field(default_factory=dict)

    @property
    def rejected(self) -> bool:
        return self.label == self.n_classes


def best_label(scores: dict) -> int:
    """Highest score wins; equal scores go to the lowest label."""
    top = max(scores.values())
    return min(lab for lab, s in scores.items() if s == top)


def binomial_ensemble_error(epsilon: float, K: int) -> float:
    """Probability that a strict majority of K independent classifiers err."""
    if K < 1 or K % 2 == 0:
        raise InvalidK(f"K must be odd and positive, got {K}")
    if not 0.0 <= epsilon <= 1.0:
        raise ValueError("epsilon must lie in [0, 1]")
    return sum(math.comb(K, i) * epsilon ** i * (1 - epsilon) ** (K - i) for i in range((K + 1) // 2, K + 1))

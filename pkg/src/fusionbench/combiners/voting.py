"""Abstract-level voting with rejection.

Predictions equal to ``n_classes`` are rejections; a rejected ensemble
decision is likewise reported as ``n_classes``.
"""

from __future__ import annotations

from collections import Counter

from ..errors import InvalidAlpha, LabelOutOfRange
from .ensemble import EnsembleDecision

VARIANTS = ("unanimous", "no_conflict", "margin")


def vote(variant: str, preds, n_classes: int, alpha: float = 0.5) -> EnsembleDecision:
    reject = n_classes
    preds = [int(p) for p in preds]
    if any(p < 0 or p > reject for p in preds):
        raise LabelOutOfRange(f"votes must lie in 0..{n_classes} ({n_classes} = reject)")
    counts = Counter(p for p in preds if p != reject)
    scores = {lab: float(c) for lab, c in sorted(counts.items())}
    K = len(preds)

    if variant == "unanimous":
        ok = len(counts) == 1 and sum(counts.values()) == K
        label = next(iter(counts)) if ok else reject
    elif variant == "no_conflict":
        label = next(iter(counts)) if len(counts) == 1 else reject
    elif variant == "margin":
        if not 0 < alpha <= 1:
            raise InvalidAlpha(f"alpha must lie in (0, 1], got {alpha}")
        ranked = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
        if not ranked:
            label = reject
        else:
            max1 = ranked[0][1]
            max2 = ranked[1][1] if len(ranked) > 1 else 0
            # tolerance absorbs float error in alpha * K (e.g. 0.6 * 5)
            label = ranked[0][0] if max1 - max2 >= alpha * K - 1e-12 else reject
    else:
        raise ValueError(f"unknown vote variant {variant!r}; choose from {VARIANTS}")
    return EnsembleDecision(label, n_classes, scores)

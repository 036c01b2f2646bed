"""The five confidence-driven fusion hypotheses over three base classifiers.

Hypotheses 1, 3 and 4 share one rule, a confidence-weighted vote: each
classifier adds its confidence for the label it predicted, and the label
with the largest total wins.  They differ only in where predictions and
confidence matrices come from (exemplar NN, nearest centroid, average
distance).  Hypothesis 2 hands the decision to the single most confident
classifier; hypothesis 5 is the weighted vote with per-sample confidences.
"""

from __future__ import annotations

import numpy as np

from ..errors import LabelOutOfRange, LengthMismatch
from .ensemble import EnsembleDecision, best_label


def _weighted_vote(preds, weights, n_classes) -> EnsembleDecision:
    scores: dict[int, float] = {}
    for lab, w in zip(preds, weights):
        scores[lab] = scores.get(lab, 0.0) + float(w)
    return EnsembleDecision(best_label(scores), n_classes, dict(sorted(scores.items())))


def confidence_weighted_vote(preds, conf) -> EnsembleDecision:
    """Sum ``conf[pred_i, i]`` over the classifiers agreeing on each label."""
    conf = np.asarray(conf, dtype=np.float64)
    n_classes, r = conf.shape
    preds = [int(p) for p in preds]
    if len(preds) != r:
        raise LengthMismatch(f"{len(preds)} predictions for {r} classifiers")
    if any(p < 0 or p >= n_classes for p in preds):
        raise LabelOutOfRange(f"predictions must lie in 0..{n_classes - 1}")
    return _weighted_vote(preds, [conf[p, i] for i, p in enumerate(preds)], n_classes)


hypothesis1 = confidence_weighted_vote
hypothesis3 = confidence_weighted_vote
hypothesis4 = confidence_weighted_vote


def hypothesis2(preds, sample_conf, n_classes: int) -> EnsembleDecision:
    """The prediction of the classifier with the largest per-sample margin ratio."""
    preds = [int(p) for p in preds]
    sample_conf = np.asarray(sample_conf, dtype=np.float64)
    if len(preds) != len(sample_conf):
        raise LengthMismatch("one confidence per classifier is required")
    winner = int(np.argmax(sample_conf))  # first maximum = lowest classifier index
    scores = {}
    for p, c in zip(preds, sample_conf):
        scores[p] = max(scores.get(p, -np.inf), float(c))
    return EnsembleDecision(preds[winner], n_classes, dict(sorted(scores.items())))


def hypothesis5(preds, confs, n_classes: int) -> EnsembleDecision:
    """Weighted vote with each classifier's centroid-ratio confidence for this sample."""
    preds = [int(p) for p in preds]
    if len(preds) != len(confs):
        raise LengthMismatch("one confidence per classifier is required")
    return _weighted_vote(preds, confs, n_classes)

"""Fixed combination rules over an R x M matrix of classifier posteriors.

``P[i, k]`` is classifier i's posterior for class k.  Product and sum use the
prior-weighted forms; max, min, mean and median use their equal-prior forms.
"""

from __future__ import annotations

import numpy as np

from ..errors import InvalidPriors
from .ensemble import EnsembleDecision, best_label

RULES = ("product", "sum", "max", "min", "mean", "median")


def check_posteriors(P, atol: float = 1e-9) -> np.ndarray:
    P = np.atleast_2d(np.asarray(P, dtype=np.float64))
    if np.any(P < 0) or np.any(P > 1):
        raise ValueError("posteriors must lie in [0, 1]")
    if not np.allclose(P.sum(axis=1), 1.0, atol=atol, rtol=0):
        raise ValueError("each classifier's posteriors must sum to 1")
    return P


def _priors(priors, m):
    if priors is None:
        return np.full(m, 1.0 / m)
    priors = np.asarray(priors, dtype=np.float64)
    if priors.shape != (m,) or np.any(priors <= 0) or abs(priors.sum() - 1.0) > 1e-9:
        raise InvalidPriors("priors must be M positive values summing to 1")
    return priors


def rule_scores(rule: str, P, priors=None) -> np.ndarray:
    P = check_posteriors(P)
    R, m = P.shape
    pri = _priors(priors, m)
    if rule == "product":
        return pri ** (-(R - 1)) * np.prod(P, axis=0)
    if rule == "sum":
        return (1 - R) * pri + P.sum(axis=0)
    if rule == "max":
        return P.max(axis=0)
    if rule == "min":
        return P.min(axis=0)
    if rule == "mean":
        return P.mean(axis=0)
    if rule == "median":
        return np.median(P, axis=0)
    raise ValueError(f"unknown fixed rule {rule!r}; choose from {RULES}")


def fixed_rule(rule: str, P, priors=None) -> EnsembleDecision:
    s = rule_scores(rule, P, priors)
    scores = {k: float(v) for k, v in enumerate(s)}
    return EnsembleDecision(best_label(scores), len(s), scores)


def harden(P) -> np.ndarray:
    """One-hot of each classifier's argmax (lowest class on ties), same shape as P."""
    P = check_posteriors(P)
    out = np.zeros(P.shape, dtype=np.int8)
    out[np.arange(P.shape[0]), np.argmax(P, axis=1)] = 1
    return out


def averaged_bayes(P) -> EnsembleDecision:
    """Argmax of the classifier-averaged posterior."""
    P = check_posteriors(P)
    avg = P.sum(axis=0) / P.shape[0]
    scores = {k: float(v) for k, v in enumerate(avg)}
    return EnsembleDecision(best_label(scores), len(avg), scores)

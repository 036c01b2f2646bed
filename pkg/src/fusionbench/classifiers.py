"""Base classifiers: exemplar nearest neighbour, nearest centroid, average-distance matching.

All distances are plain Euclidean.  Every argmin/argmax breaks ties toward
the lowest class index.  Confusion matrices put the PREDICTED class on rows
and the TRUE class on columns.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, EmptyModel, LabelOutOfRange, LengthMismatch


def pairwise_distances(Q, X, chunk: int = 64) -> np.ndarray:
    """Euclidean distances between rows of Q (m, d) and rows of X (n, d)."""
    Q = np.atleast_2d(np.asarray(Q, dtype=np.float64))
    X = np.atleast_2d(np.asarray(X, dtype=np.float64))
    if Q.shape[1] != X.shape[1]:
        raise DimensionMismatch(f"query dim {Q.shape[1]} != model dim {X.shape[1]}")
    out = np.empty((Q.shape[0], X.shape[0]))
    for s in range(0, Q.shape[0], chunk):
        diff = Q[s:s + chunk, None, :] - X[None, :, :]
        out[s:s + chunk] = np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))
    return out


def _lowest_label_argmin(dist_row, labels):
    """Label of the smallest distance; equal distances resolve to the lowest label."""
    best = dist_row.min()
    return int(labels[dist_row == best].min()), float(best)


@dataclass(frozen=True)
class ExemplarModel:
    features: np.ndarray
    labels: np.ndarray

    @classmethod
    def fit(cls, features, labels) -> "ExemplarModel":
        X = np.atleast_2d(np.asarray(features, dtype=np.float64))
        y = np.asarray(labels, dtype=np.int64)
        if X.shape[0] == 0 or X.size == 0:
            raise EmptyModel("exemplar model needs at least one training sample")
        if len(y) != X.shape[0]:
            raise LengthMismatch("features and labels differ in length")
        return cls(X, y)


def nn_classify_batch(model: ExemplarModel, Q):
    """Vectorised :func:`nn_classify`; returns arrays (labels, dis1, dis2)."""
    if len(model.labels) == 0:
        raise EmptyModel("empty exemplar model")
    D = pairwise_distances(Q, model.features)
    labels = np.empty(D.shape[0], dtype=np.int64)
    dis1 = np.empty(D.shape[0])
    dis2 = np.empty(D.shape[0])
    for i, row in enumerate(D):
        lab, d1 = _lowest_label_argmin(row, model.labels)
        other = row[model.labels != lab]
        labels[i], dis1[i] = lab, d1
        dis2[i] = other.min() if other.size else np.inf
    return labels, dis1, dis2


def nn_classify(model: ExemplarModel, q):
    """Nearest-exemplar label, its distance, and the nearest distance to any other class.

    ``dis2`` is ``inf`` when the model holds a single class.
    """
    q = np.asarray(q, dtype=np.float64)
    if q.ndim != 1:
        raise DimensionMismatch("nn_classify takes a single vector")
    labels, dis1, dis2 = nn_classify_batch(model, q[None, :])
    return int(labels[0]), float(dis1[0]), float(dis2[0])


@dataclass(frozen=True)
class CentroidModel:
    classes: np.ndarray       # (C,) sorted class labels
    centroids: np.ndarray     # (C, d)
    avg_dist: np.ndarray      # (C,) mean distance of class members to their centroid

    @classmethod
    def fit(cls, features, labels) -> "CentroidModel":
        X = np.atleast_2d(np.asarray(features, dtype=np.float64))
        y = np.asarray(labels, dtype=np.int64)
        if X.shape[0] == 0:
            raise EmptyModel("centroid model needs training samples")
        if len(y) != X.shape[0]:
            raise LengthMismatch("features and labels differ in length")
        classes = np.unique(y)
        cents = np.array([X[y == c].mean(axis=0) for c in classes])
        avg = np.array([np.linalg.norm(X[y == c] - cents[i], axis=1).mean() for i, c in enumerate(classes)])
        return cls(classes, cents, avg)


def centroid_distances(model: CentroidModel, Q) -> np.ndarray:
    return pairwise_distances(Q, model.centroids)


def centroid_classify(model: CentroidModel, q):
    """Nearest class centroid: (label, distance)."""
    d = centroid_distances(model, np.asarray(q, dtype=np.float64)[None, :])[0]
    j = int(np.argmin(d))  # classes are sorted, so first minimum is the lowest label
    return int(model.classes[j]), float(d[j])


def centroid_classify_batch(model: CentroidModel, Q):
    D = centroid_distances(model, Q)
    j = np.argmin(D, axis=1)
    return model.classes[j], D[np.arange(len(j)), j]


def avgdist_classify(model: CentroidModel, q) -> int:
    """Class whose average member-to-centroid distance is closest to the query's nearest-centroid distance."""
    return int(avgdist_classify_batch(model, np.asarray(q, dtype=np.float64)[None, :])[0])


def avgdist_classify_batch(model: CentroidModel, Q) -> np.ndarray:
    dmin = centroid_distances(model, Q).min(axis=1)
    gap = np.abs(dmin[:, None] - model.avg_dist[None, :])
    return model.classes[np.argmin(gap, axis=1)]


def build_confusion(preds, truths, n_classes: int) -> np.ndarray:
    """Counts with ``cm[pred, true]``; columns sum to per-class sample counts."""
    preds = np.asarray(preds, dtype=np.int64)
    truths = np.asarray(truths, dtype=np.int64)
    if preds.shape != truths.shape:
        raise LengthMismatch(f"{len(preds)} predictions vs {len(truths)} truths")
    for arr in (preds, truths):
        if arr.size and (arr.min() < 0 or arr.max() >= n_classes):
            raise LabelOutOfRange(f"labels must lie in 0..{n_classes - 1}")
    cm = np.zeros((n_classes, n_classes), dtype=np.int64)
    np.add.at(cm, (preds, truths), 1)
    return cm


def accuracy(preds, truths) -> float:
    preds, truths = np.asarray(preds), np.asarray(truths)
    return float(np.mean(preds == truths)) if preds.size else 0.0

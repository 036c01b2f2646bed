"""Confidence scores feeding the five fusion hypotheses."""

from __future__ import annotations

import numpy as np

from .classifiers import CentroidModel, centroid_distances

EPS = 1e-9


def confidence_from_confusion(cm) -> np.ndarray:
    """Per-class recall: diagonal over column sum (0 for classes never seen)."""
    cm = np.asarray(cm, dtype=np.float64)
    col = cm.sum(axis=0)
    diag = np.diag(cm)
    return np.divide(diag, col, out=np.zeros_like(diag), where=col > 0)


def confidence_matrix(confusions) -> np.ndarray:
    """Stack one confusion-derived column per classifier into an M x R matrix."""
    return np.column_stack([confidence_from_confusion(cm) for cm in confusions])


def margin_confidence(dis1, dis2, eps: float = EPS):
    """Ratio dis2/dis1 with dis1 floored at ``eps``; works elementwise on arrays."""
    return np.asarray(dis2, dtype=np.float64) / np.maximum(np.asarray(dis1, dtype=np.float64), eps)


def centroid_ratio_confidence(model: CentroidModel, q, eps: float = EPS):
    """Nearest-centroid label and ``avg_dist[label] / distance``."""
    labels, confs = centroid_ratio_confidence_batch(model, np.asarray(q, dtype=np.float64)[None, :], eps)
    return int(labels[0]), float(confs[0])


def centroid_ratio_confidence_batch(model: CentroidModel, Q, eps: float = EPS):
    D = centroid_distances(model, Q)
    j = np.argmin(D, axis=1)
    d = D[np.arange(len(j)), j]
    return model.classes[j], model.avg_dist[j] / np.maximum(d, eps)


def format_confidence_matrix(conf) -> str:
    """Class x classifier grid, 6 decimals, fixed-width columns."""
    conf = np.asarray(conf)
    r = conf.shape[1]
    head = f"{'CLASS':<8}" + "".join(f"{f'CLASSIFIER-{i + 1}':>16}" for i in range(r))
    lines = ["THE CONFIDENCE OF EACH CLASSIFIER ON INDIVIDUAL CLASSES", head]
    for c, row in enumerate(conf):
        lines.append(f"{c:<8d}" + "".join(f"{v:>16.6f}" for v in row))
    return "\n".join(lines)

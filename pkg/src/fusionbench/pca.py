"""Principal component analysis by eigendecomposition of the sample covariance.

When there are fewer samples than dimensions (the Gabor case: ~960 x 4096)
the eigenvectors are recovered from the n x n Gram matrix instead of the
d x d covariance; both routes give the same model.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DataError, DegenerateInput, DimensionMismatch

CLAMP_RATIO = 1e-12


@dataclass(frozen=True)
class PcaModel:
    mean: np.ndarray          # (d,)
    components: np.ndarray    # (k, d), orthonormal rows
    eigenvalues: np.ndarray   # (k,), nonincreasing, clamped tiny values -> 0
    clamped: np.ndarray       # (k,) bool, True where the eigenvalue was clamped

    @property
    def dim(self) -> int:
        return self.mean.shape[0]

    @property
    def k(self) -> int:
        return self.components.shape[0]


def _fix_signs(vecs: np.ndarray) -> np.ndarray:
    """Make the largest-|.| entry of every row positive (first index on ties)."""
    idx = np.argmax(np.abs(vecs), axis=1)
    signs = np.sign(vecs[np.arange(len(vecs)), idx])
    signs[signs == 0] = 1
    return vecs * signs[:, None]


def _complete_basis(vecs: np.ndarray, d: int, count: int) -> np.ndarray:
    """Extend the orthonormal rows ``vecs`` with ``count`` more, by Gram-Schmidt on e_0, e_1, ..."""
    basis = [v for v in vecs]
    extra = []
    for i in range(d):
        if len(extra) == count:
            break
        e = np.zeros(d)
        e[i] = 1.0
        for _ in range(2):
            for b in basis + extra:
                e -= np.dot(b, e) * b
        n = np.linalg.norm(e)
        if n > 1e-6:
            extra.append(e / n)
    return np.array(extra).reshape(count, d)


def _top_eigh(mat: np.ndarray, k: int):
    vals, vecs = np.linalg.eigh(mat)
    order = np.argsort(-vals, kind="stable")[:k]
    return vals[order], vecs[:, order]


def pca_fit(data, k: int, method: str = "auto") -> PcaModel:
    """Fit the top-``k`` principal components of ``data`` (n x d).

    ``method`` is ``"covariance"`` (d x d eigenproblem), ``"gram"`` (n x n)
    or ``"auto"`` (Gram when n < d).  Uses the n-1 covariance divisor.
    """
    X = np.asarray(data, dtype=np.float64)
    if X.ndim != 2:
        raise DegenerateInput("PCA input must be a 2-D matrix")
    n, d = X.shape
    if n < 2:
        raise DegenerateInput(f"PCA needs at least 2 samples, got {n}")
    if not 1 <= k <= min(n - 1, d):
        raise DegenerateInput(f"k={k} outside 1..{min(n - 1, d)}")
    if method == "auto":
        method = "gram" if n < d else "covariance"
    mean = X.mean(axis=0)
    Xc = X - mean

    if method == "covariance":
        vals, vecs = _top_eigh(Xc.T @ Xc / (n - 1), k)
        comps = vecs.T
        vals = vals.copy()
    elif method == "gram":
        vals, u = _top_eigh(Xc @ Xc.T / (n - 1), k)
        vals = vals.copy()
        comps = np.zeros((k, d))
        top = max(vals[0], 0.0)
        good = vals > CLAMP_RATIO * top
        if np.any(good):
            # X^T u / sqrt((n-1) lambda) is a unit eigenvector of the covariance
            comps[good] = (Xc.T @ u[:, good] / np.sqrt((n - 1) * vals[good])).T
        if not np.all(good):
            comps[~good] = _complete_basis(comps[good], d, int((~good).sum()))
    else:
        raise ValueError(f"unknown PCA method {method!r}")

    top = max(vals[0], 0.0)
    clamped = vals <= CLAMP_RATIO * top
    vals[clamped] = 0.0
    return PcaModel(mean=mean, components=_fix_signs(comps), eigenvalues=vals, clamped=clamped)


def pca_project(model: PcaModel, v) -> np.ndarray:
    """Project one vector (d,) or a batch (n, d) onto the components."""
    v = np.asarray(v, dtype=np.float64)
    if v.shape[-1] != model.dim:
        raise DimensionMismatch(f"expected dimension {model.dim}, got {v.shape[-1]}")
    return (v - model.mean) @ model.components.T


def pca_reconstruct(model: PcaModel, z) -> np.ndarray:
    return np.asarray(z) @ model.components + model.mean


_HEADER = "fusionbench-pca v1"


def _row(values) -> str:
    return ",".join(repr(float(x)) for x in values)


def save_pca(path, model: PcaModel) -> None:
    lines = [f"{_HEADER} dim={model.dim} k={model.k}", "MEAN", _row(model.mean),
             "EIGENVALUES", _row(model.eigenvalues), "COMPONENTS"]
    lines += [_row(c) for c in model.components]
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def load_pca(path) -> PcaModel:
    lines = open(path).read().splitlines()
    if not lines or not lines[0].startswith(_HEADER):
        raise DataError(f"{path} is not a fusionbench PCA model")
    meta = dict(tok.split("=", 1) for tok in lines[0][len(_HEADER):].split())
    d, k = int(meta["dim"]), int(meta["k"])
    try:
        mean = np.array(lines[lines.index("MEAN") + 1].split(","), dtype=float)
        eig = np.array(lines[lines.index("EIGENVALUES") + 1].split(","), dtype=float)
        start = lines.index("COMPONENTS") + 1
        comps = np.array([l.split(",") for l in lines[start:start + k]], dtype=float)
    except (ValueError, IndexError) as exc:
        raise DataError(f"malformed PCA model {path}: {exc}") from exc
    if mean.shape != (d,) or eig.shape != (k,) or comps.shape != (k, d):
        raise DataError(f"PCA model sections disagree with header in {path}")
    return PcaModel(mean=mean, components=comps, eigenvalues=eig, clamped=eig == 0)

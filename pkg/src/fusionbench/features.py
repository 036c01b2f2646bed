"""Feature extractors for the three base classifiers, plus the feature cache.

* raw:    the 1024 binary pixels, row-major
* radial: 128 centroid-to-last-ink distances along Bresenham rays
* gabor:  complex-magnitude responses of an oriented Gabor bank, 1024 per filter
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import DataError
from .image_core import SIDE, bresenham_line, centroid, round_half_up

KINDS = ("raw", "radial", "gabor", "pca")
RADIAL_DIM = 4 * SIDE


def raw_feature(img) -> np.ndarray:
    return np.asarray(img, dtype=np.float64).reshape(-1)


def perimeter_points(side: int = SIDE) -> list[tuple[int, int]]:
    """The 4*side frame pixels: top L->R, right T->B, bottom R->L, left B->T.

    Each side contributes ``side`` pixels, so the four corners appear twice.
    """
    last = side - 1
    top = [(x, 0) for x in range(side)]
    right = [(last, y) for y in range(side)]
    bottom = [(x, last) for x in range(last, -1, -1)]
    left = [(0, y) for y in range(last, -1, -1)]
    return top + right + bottom + left


_PERIMETER = perimeter_points()
_FRAME_CENTER = (SIDE // 2, SIDE // 2)


def radial_feature(img, rays: str = "perimeter") -> np.ndarray:
    """Distance from the centroid to the last ink pixel along each of 128 rays.

    Rays start at the rounded centroid.  With ``rays="perimeter"`` each ray
    ends at a frame perimeter pixel.  With ``rays="relative"`` the ray ends at
    the perimeter pixel shifted by the centroid's offset from the frame
    centre, which makes the descriptor exactly translation invariant;
    out-of-frame ray pixels count as background.  A ray with no ink yields 0.
    """
    if rays not in ("perimeter", "relative"):
        raise ValueError(f"unknown ray mode {rays!r}")
    img = np.asarray(img)
    cx, cy = centroid(img)
    ox, oy = round_half_up(cx), round_half_up(cy)
    if rays == "relative":
        shift = (ox - _FRAME_CENTER[0], oy - _FRAME_CENTER[1])
    else:
        shift = (0, 0)
    out = np.zeros(RADIAL_DIM)
    for k, (px, py) in enumerate(_PERIMETER):
        last = None
        for x, y in bresenham_line((ox, oy), (px + shift[0], py + shift[1])):
            if 0 <= x < SIDE and 0 <= y < SIDE and img[y, x]:
                last = (x, y)
        if last is not None:
            out[k] = math.hypot(last[0] - cx, last[1] - cy)
    return out


@dataclass(frozen=True)
class GaborParams:
    omega: float = math.pi / 2
    theta: float = 0.0
    sigma_x: float = 1.4
    sigma_y: float = 1.4
    kernel_size: int = 7

    def __post_init__(self):
        if not (self.sigma_x > 0 and self.sigma_y > 0):
            raise ValueError("Gabor sigmas must be positive")
        if self.kernel_size < 3 or self.kernel_size % 2 == 0:
            raise ValueError("Gabor kernel_size must be odd and >= 3")


@dataclass(frozen=True)
class GaborBank:
    params: tuple[GaborParams, ...] = field(default_factory=tuple)

    def __len__(self):
        return len(self.params)


def default_bank(kernel_size: int = 7, omega: float = math.pi / 2, sigma: float | None = None) -> GaborBank:
    """Four orientations (0, 45, 90, 135 degrees) sharing one envelope and frequency."""
    if sigma is None:
        sigma = kernel_size / 5
    return GaborBank(tuple(
        GaborParams(omega=omega, theta=math.radians(deg), sigma_x=sigma, sigma_y=sigma, kernel_size=kernel_size)
        for deg in (0, 45, 90, 135)
    ))


def gabor_kernel(p: GaborParams) -> np.ndarray:
    """Complex kernel K[row, col] sampled at offsets (x=col-h, y=row-h).

    The Gaussian envelope is axis-aligned; only the carrier rotates with theta.
    """
    h = p.kernel_size // 2
    y, x = np.mgrid[-h:h + 1, -h:h + 1].astype(np.float64)
    envelope = np.exp(-0.5 * ((x / p.sigma_x) ** 2 + (y / p.sigma_y) ** 2)) / (2 * math.pi * p.sigma_x * p.sigma_y)
    carrier = np.exp(1j * p.omega * (x * math.cos(p.theta) + y * math.sin(p.theta)))
    return envelope * carrier


def correlate_same(img, kernel) -> np.ndarray:
    """Zero-padded, stride-1 correlation (no kernel flip) keeping the input shape."""
    img = np.asarray(img, dtype=np.float64)
    kh, kw = kernel.shape
    ph, pw = kh // 2, kw // 2
    padded = np.pad(img, ((ph, ph), (pw, pw)))
    out = np.zeros(img.shape, dtype=np.complex128)
    rows, cols = img.shape
    for r in range(kh):
        for c in range(kw):
            out += kernel[r, c] * padded[r:r + rows, c:c + cols]
    return out


def gabor_feature(img, bank: GaborBank, kernels=None) -> np.ndarray:
    """Concatenated |response| maps for every filter in ``bank``."""
    if kernels is None:
        kernels = [gabor_kernel(p) for p in bank.params]
    return np.concatenate([np.abs(correlate_same(img, k)).reshape(-1) for k in kernels])


@dataclass
class FeatureSet:
    """A block of feature vectors of one kind with their sample metadata."""

    kind: str
    values: np.ndarray
    labels: np.ndarray
    books: np.ndarray
    ids: np.ndarray

    def __post_init__(self):
        self.values = np.atleast_2d(np.asarray(self.values, dtype=np.float64))
        n = self.values.shape[0]
        self.labels = np.asarray(self.labels, dtype=np.int64)
        self.books = np.asarray(self.books, dtype=np.int64)
        self.ids = np.asarray(self.ids, dtype=np.int64)
        if self.kind not in KINDS:
            raise ValueError(f"unknown feature kind {self.kind!r}")
        if not (len(self.labels) == len(self.books) == len(self.ids) == n):
            raise ValueError("metadata length does not match number of vectors")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("feature values must be finite")

    @property
    def dim(self) -> int:
        return self.values.shape[1]

    def __len__(self):
        return self.values.shape[0]


_HEADER = "fusionbench-features v1"


def write_feature_cache(path, fs: FeatureSet, binary: bool = False) -> None:
    header = f"{_HEADER} kind={fs.kind} dim={fs.dim} n={len(fs)}\n"
    if binary:
        block = np.column_stack([fs.labels, fs.books, fs.ids, fs.values]).astype("<f8")
        with open(path, "wb") as fh:
            fh.write(header.encode("ascii"))
            fh.write(block.tobytes())
        return
    with open(path, "w", newline="\n") as fh:
        fh.write(header)
        for i in range(len(fs)):
            vals = ",".join(repr(float(v)) for v in fs.values[i])
            fh.write(f"{fs.labels[i]},{fs.books[i]},{fs.ids[i]},{vals}\n")


def _parse_header(line: str) -> dict[str, str]:
    if not line.startswith(_HEADER):
        raise DataError(f"not a fusionbench feature cache: {line[:40]!r}")
    fields = dict(tok.split("=", 1) for tok in line[len(_HEADER):].split())
    for key in ("kind", "dim", "n"):
        if key not in fields:
            raise DataError(f"feature cache header lacks {key}=")
    return fields


def read_feature_cache(path, binary: bool | None = None) -> FeatureSet:
    """Load a cache written by :func:`write_feature_cache`.

    ``binary=None`` detects the variant from the payload size.
    """
    raw = Path(path).read_bytes()
    nl = raw.index(b"\n")
    meta = _parse_header(raw[:nl].decode("ascii"))
    kind, dim, n = meta["kind"], int(meta["dim"]), int(meta["n"])
    payload = raw[nl + 1:]
    if binary is None:
        binary = len(payload) == n * (dim + 3) * 8 and not payload[:1].isdigit()
    if binary:
        block = np.frombuffer(payload, dtype="<f8").reshape(n, dim + 3)
    else:
        rows = [line.split(",") for line in payload.decode("ascii").splitlines() if line.strip()]
        if len(rows) != n or any(len(r) != dim + 3 for r in rows):
            raise DataError("feature cache body does not match its header")
        block = np.array(rows, dtype=np.float64).reshape(n, dim + 3)
    return FeatureSet(kind, block[:, 3:], block[:, 0], block[:, 1], block[:, 2])

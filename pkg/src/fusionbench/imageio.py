"""Narrow adapter between image files (PGM P5, PNG) and in-memory grids."""

from __future__ import annotations

from pathlib import Path

import numpy as np
from PIL import Image

from .errors import DataError


def read_gray(path) -> np.ndarray:
    """Load an image file as a 2-D uint8 grayscale array."""
    try:
        with Image.open(path) as im:
            return np.asarray(im.convert("L"), dtype=np.uint8)
    except (OSError, ValueError) as exc:
        raise DataError(f"cannot read image {path}: {exc}") from exc


def write_pgm(path, pixels) -> None:
    """Write a grayscale grid as binary PGM (P5)."""
    arr = np.asarray(pixels, dtype=np.uint8)
    h, w = arr.shape
    with open(Path(path), "wb") as fh:
        fh.write(f"P5\n{w} {h}\n255\n".encode("ascii"))
        fh.write(arr.tobytes())


def binary_to_gray(img) -> np.ndarray:
    """Render a binary glyph as black ink (0) on white (255)."""
    return np.where(np.asarray(img) == 1, 0, 255).astype(np.uint8)

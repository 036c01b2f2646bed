"""Glyph images: binarization, canonical resizing, centroids, line rasterization.

Grayscale images are 2-D integer arrays in [0, 255] indexed ``[row, col]``.
A binary image is a 32x32 ``uint8`` array with 1 for ink (black) and 0 for
background (white).  Points are ``(x, y)`` tuples with ``x`` the column and
``y`` the row, origin at the top-left.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from .errors import BlankImage, EmptyImage

SIDE = 32
DEFAULT_THRESHOLD = 128


class Point(NamedTuple):
    x: int
    y: int


def as_gray_image(pixels) -> np.ndarray:
    img = np.asarray(pixels)
    if img.ndim != 2:
        raise ValueError(f"gray image must be 2-D, got shape {img.shape}")
    if img.shape[0] == 0 or img.shape[1] == 0:
        raise EmptyImage(f"image has zero extent: {img.shape}")
    if img.min() < 0 or img.max() > 255:
        raise ValueError("gray intensities must lie in [0, 255]")
    return img.astype(np.int16, copy=False)


def as_binary_image(pixels) -> np.ndarray:
    """Validate and return a read-only 32x32 binary image."""
    img = np.array(pixels, dtype=np.uint8)
    if img.shape != (SIDE, SIDE):
        raise ValueError(f"binary image must be {SIDE}x{SIDE}, got {img.shape}")
    if np.any(img > 1):
        raise ValueError("binary image entries must be 0 or 1")
    img.setflags(write=False)
    return img


def binarize(img, threshold: int = DEFAULT_THRESHOLD) -> np.ndarray:
    """Map intensities to {0, 255}: 0 (black) iff intensity <= threshold."""
    g = as_gray_image(img)
    return np.where(g <= threshold, 0, 255).astype(np.uint8)


def resize_to_canonical(img, threshold: int = DEFAULT_THRESHOLD, invert: bool = False) -> np.ndarray:
    """Binarize and nearest-neighbour resample any grayscale glyph to 32x32.

    ``invert`` flips light-on-dark crops before thresholding.
    """
    g = as_gray_image(img)
    if invert:
        g = 255 - g
    ink = (binarize(g, threshold) == 0).astype(np.uint8)
    h, w = ink.shape
    rows = (np.arange(SIDE) * h) // SIDE
    cols = (np.arange(SIDE) * w) // SIDE
    return as_binary_image(ink[np.ix_(rows, cols)])


def centroid(img) -> tuple[float, float]:
    """Mean (x, y) of the ink pixels."""
    ys, xs = np.nonzero(np.asarray(img))
    if xs.size == 0:
        raise BlankImage("centroid of an image without ink pixels")
    return float(xs.mean()), float(ys.mean())


def round_half_up(v: float) -> int:
    return int(math.floor(v + 0.5))


def rounded_centroid(img) -> Point:
    cx, cy = centroid(img)
    return Point(round_half_up(cx), round_half_up(cy))


def _bresenham_forward(x0, y0, x1, y1):
    dx, dy = abs(x1 - x0), abs(y1 - y0)
    sx = 1 if x1 >= x0 else -1
    sy = 1 if y1 >= y0 else -1
    if dx >= dy:
        major, minor, dmaj, dmin = x0, y0, dx, dy
        smaj, smin, x_major = sx, sy, True
    else:
        major, minor, dmaj, dmin = y0, x0, dy, dx
        smaj, smin, x_major = sy, sx, False
    # decision variable tracks 2*dmaj*(true_minor_offset - chosen_offset - 1/2)
    err = 2 * dmin - dmaj
    pts = []
    for _ in range(dmaj + 1):
        pts.append(Point(major, minor) if x_major else Point(minor, major))
        if err >= 0:
            minor += smin
            err -= 2 * dmaj
        err += 2 * dmin
        major += smaj
    return pts


def bresenham_line(a, b) -> list[Point]:
    """Integer rasterization of the segment from ``a`` to ``b`` inclusive.

    The line is always traced from the lexicographically smaller endpoint, so
    ``bresenham_line(b, a)`` is exactly the reverse of ``bresenham_line(a, b)``.
    Half-way ties on the minor axis step away from that canonical start.
    """
    a, b = Point(*map(int, a)), Point(*map(int, b))
    if tuple(b) < tuple(a):
        return _bresenham_forward(b.x, b.y, a.x, a.y)[::-1]
    return _bresenham_forward(a.x, a.y, b.x, b.y)

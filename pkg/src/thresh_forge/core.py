"""Image types, grayscale conversion and histograms.

Gray images are plain ``numpy.ndarray`` objects of dtype ``uint8`` and shape
``(height, width)``; pixels are stored row-major.  Masks carry a little more
provenance and get their own dataclass.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import DimensionMismatch, EmptyImage

LUMA_WEIGHTS = (0.299, 0.587, 0.114)


def as_gray_image(img) -> np.ndarray:
    """Validate ``img`` and return it as a 2-D uint8 array (no copy if possible)."""
    arr = np.asarray(img)
    if arr.ndim != 2:
        raise DimensionMismatch(f"expected a 2-D image, got shape {arr.shape}")
    if arr.shape[0] == 0 or arr.shape[1] == 0:
        raise EmptyImage(f"image has zero extent: {arr.shape}")
    if arr.dtype != np.uint8:
        if arr.size and (arr.min() < 0 or arr.max() > 255):
            raise ValueError("intensities must lie in [0, 255]")
        if np.issubdtype(arr.dtype, np.floating) and not np.all(arr == np.round(arr)):
            raise ValueError("intensities must be integers")
        arr = arr.astype(np.uint8)
    return arr


def gray_image(pixels, width: int, height: int) -> np.ndarray:
    """Build a gray image from a flat row-major pixel sequence."""
    flat = np.asarray(pixels)
    if flat.size != width * height:
        raise DimensionMismatch(
            f"{flat.size} pixels do not fill a {width}x{height} image")
    if width <= 0 or height <= 0:
        raise EmptyImage(f"image has zero extent: {width}x{height}")
    return as_gray_image(flat.reshape(height, width))


def round_half_up(values) -> np.ndarray:
    return np.floor(np.asarray(values, dtype=np.float64) + 0.5)


def to_grayscale(rgb_pixels, width: int, height: int) -> np.ndarray:
    """Convert RGB triples to luma with BT.601 weights.

    ``rgb_pixels`` may be a flat sequence of ``(r, g, b)`` triples or an
    array of shape ``(height, width, 3)``.
    """
    rgb = np.asarray(rgb_pixels, dtype=np.float64)
    if rgb.size != width * height * 3 or rgb.shape[-1] != 3:
        raise DimensionMismatch(
            f"rgb data of shape {rgb.shape} does not match {width}x{height}")
    if width <= 0 or height <= 0:
        raise EmptyImage(f"image has zero extent: {width}x{height}")
    rgb = rgb.reshape(height, width, 3)
    r, g, b = LUMA_WEIGHTS
    luma = r * rgb[..., 0] + g * rgb[..., 1] + b * rgb[..., 2]
    # 0.299*v + 0.587*v + 0.114*v can land a hair below v; round before clamping
    return np.clip(round_half_up(np.round(luma, 9)), 0, 255).astype(np.uint8)


@dataclass(frozen=True)
class Histogram:
    bins: np.ndarray  # int64[256]
    total: int

    def __post_init__(self):
        bins = np.asarray(self.bins, dtype=np.int64)
        if bins.shape != (256,):
            raise DimensionMismatch(f"histogram needs 256 bins, got {bins.shape}")
        if np.any(bins < 0):
            raise ValueError("bin counts must be non-negative")
        if int(bins.sum()) != int(self.total):
            raise ValueError("bin counts do not sum to total")
        object.__setattr__(self, "bins", bins)
        object.__setattr__(self, "total", int(self.total))

    @classmethod
    def from_counts(cls, counts: dict[int, int] | np.ndarray) -> "Histogram":
        """Build from a ``{intensity: count}`` mapping or a 256-long array."""
        if isinstance(counts, dict):
            bins = np.zeros(256, dtype=np.int64)
            for v, c in counts.items():
                bins[int(v)] += int(c)
        else:
            bins = np.asarray(counts, dtype=np.int64)
        return cls(bins, int(bins.sum()))

    def nonzero_count(self) -> int:
        return int(np.count_nonzero(self.bins))

    def to_list(self) -> list[int]:
        return [int(c) for c in self.bins]


def histogram(img) -> Histogram:
    img = as_gray_image(img)
    bins = np.bincount(img.ravel(), minlength=256).astype(np.int64)
    return Histogram(bins, img.size)


def image_mean_variance(hist: Histogram) -> tuple[float, float]:
    """Population mean and variance of the intensity distribution."""
    if hist.total <= 0:
        raise EmptyImage("histogram is empty")
    levels = np.arange(256, dtype=np.float64)
    p = hist.bins / hist.total
    mean = float(np.dot(levels, p))
    variance = float(np.dot((levels - mean) ** 2, p))
    return mean, variance


@dataclass
class BinaryMask:
    """Two-valued segmentation result (1 = foreground)."""

    labels: np.ndarray  # uint8 (height, width), values in {0, 1}
    method: str = "classic"
    threshold_used: Optional[int] = None
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        labels = np.asarray(self.labels)
        if labels.ndim != 2:
            raise DimensionMismatch(f"mask must be 2-D, got shape {labels.shape}")
        if labels.size and not np.isin(labels, (0, 1)).all():
            raise ValueError("mask labels must be 0 or 1")
        self.labels = labels.astype(np.uint8, copy=False)

    @property
    def width(self) -> int:
        return self.labels.shape[1]

    @property
    def height(self) -> int:
        return self.labels.shape[0]

    def to_image(self) -> np.ndarray:
        """Render as a 0/255 gray image for viewing or PGM output."""
        return (self.labels * 255).astype(np.uint8)

    @classmethod
    def from_image(cls, img, **kwargs) -> "BinaryMask":
        """Inverse of :meth:`to_image`: nonzero pixels become label 1."""
        return cls((as_gray_image(img) > 0).astype(np.uint8), **kwargs)

    def __eq__(self, other):
        if not isinstance(other, BinaryMask):
            return NotImplemented
        return (self.labels.shape == other.labels.shape
                and bool(np.array_equal(self.labels, other.labels))
                and self.method == other.method
                and self.threshold_used == other.threshold_used)

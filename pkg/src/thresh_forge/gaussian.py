"""Gaussian kernels and separable smoothing with replicate borders."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import as_gray_image, round_half_up
from .errors import InvalidSigma


def _check_sigma(sigma: float) -> float:
    sigma = float(sigma)
    if not sigma > 0 or not math.isfinite(sigma):
        raise InvalidSigma(f"sigma must be a positive finite number, got {sigma}")
    return sigma


def gaussian_density(x: float, sigma: float) -> float:
    """Zero-mean normal density with standard deviation ``sigma``."""
    sigma = _check_sigma(sigma)
    return math.exp(-x * x / (2.0 * sigma * sigma)) / math.sqrt(2.0 * math.pi * sigma * sigma)


@dataclass(frozen=True)
class GaussianKernel:
    sigma: float
    radius: int
    weights: np.ndarray

    def __len__(self):
        return len(self.weights)

    def tolist(self) -> list[float]:
        return [float(w) for w in self.weights]


def kernel_radius(sigma: float) -> int:
    return max(1, math.ceil(3.0 * _check_sigma(sigma)))


def kernel_1d(sigma: float) -> GaussianKernel:
    """Sample the density at integer offsets in [-3 sigma, 3 sigma] and normalise."""
    sigma = _check_sigma(sigma)
    radius = kernel_radius(sigma)
    raw = np.array([gaussian_density(i, sigma) for i in range(-radius, radius + 1)])
    weights = raw / raw.sum()
    # exact mirror symmetry regardless of summation order
    weights = 0.5 * (weights + weights[::-1])
    weights.setflags(write=False)
    return GaussianKernel(sigma, radius, weights)


def _correlate_axis(data: np.ndarray, weights: np.ndarray, axis: int) -> np.ndarray:
    r = len(weights) // 2
    pad = [(0, 0), (0, 0)]
    pad[axis] = (r, r)
    padded = np.pad(data, pad, mode="edge")
    n = data.shape[axis]
    out = np.zeros(data.shape, dtype=np.float64)
    for j, w in enumerate(weights):
        if axis == 1:
            out += w * padded[:, j:j + n]
        else:
            out += w * padded[j:j + n, :]
    return out


def smooth_float(img, sigma: float) -> np.ndarray:
    """Separable blur (rows, then columns) without the final rounding."""
    img = as_gray_image(img)
    kernel = kernel_1d(sigma)
    rows = _correlate_axis(img.astype(np.float64), kernel.weights, axis=1)
    return _correlate_axis(rows, kernel.weights, axis=0)


def smooth(img, sigma: float) -> np.ndarray:
    """Gaussian-blur a gray image, rounding half up back to uint8."""
    blurred = smooth_float(img, sigma)
    return np.clip(round_half_up(blurred), 0, 255).astype(np.uint8)

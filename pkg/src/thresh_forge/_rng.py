"""Portable counter-based normal deviates.

Stream definition (pinned so every platform produces the same bytes):

* ``u64(i) = splitmix64_mix(seed + (i + 1) * 0x9E3779B97F4A7C15)`` mod 2**64,
  where ``splitmix64_mix`` is the SplitMix64 output function
  (xor-shift 30 / mul 0xBF58476D1CE4E5B9 / xor-shift 27 /
  mul 0x94D049BB133111EB / xor-shift 31).
* ``uniform(i) = ((u64(i) >> 11) + 1) * 2**-53`` lies in (0, 1].
* Normal deviate ``j`` uses Box-Muller on uniforms ``2m`` and ``2m + 1``
  (``m = j // 2``): ``sqrt(-2 ln u0) * cos(2 pi u1)`` for even ``j`` and
  ``... * sin(2 pi u1)`` for odd ``j``.
"""
from __future__ import annotations

import numpy as np

GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)


def splitmix64(seed: int, n: int) -> np.ndarray:
    """First ``n`` outputs of SplitMix64 started from ``seed``."""
    counter = np.arange(1, n + 1, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = np.uint64(seed % 2**64) + counter * GOLDEN
        z = (z ^ (z >> np.uint64(30))) * _M1
        z = (z ^ (z >> np.uint64(27))) * _M2
    return z ^ (z >> np.uint64(31))


def uniforms(seed: int, n: int) -> np.ndarray:
    bits = splitmix64(seed, n) >> np.uint64(11)
    return (bits.astype(np.float64) + 1.0) * 2.0 ** -53


def standard_normal(seed: int, n: int) -> np.ndarray:
    pairs = (n + 1) // 2
    u = uniforms(seed, 2 * pairs).reshape(pairs, 2)
    radius = np.sqrt(-2.0 * np.log(u[:, 0]))
    angle = 2.0 * np.pi * u[:, 1]
    z = np.stack([radius * np.cos(angle), radius * np.sin(angle)], axis=1)
    return z.ravel()[:n]

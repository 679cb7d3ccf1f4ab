"""
Gaussian smoothing
==================

Kernel values at sigma = 1 and the effect of blurring on a noisy image.
"""
import math

import numpy as np

from thresh_forge.gaussian import gaussian_density, kernel_1d, smooth

for x in (0, 1, 2):
    g = gaussian_density(x, 1.0)
    print(f"G({x}) = {g:.4f}   G({x})/G(0) = {g / gaussian_density(0, 1.0):.4f}"
          f"   exp(-x^2/2) = {math.exp(-x * x / 2):.4f}")

kernel = kernel_1d(2.0)
print("sigma 2 kernel: radius", kernel.radius, "weights sum", kernel.weights.sum())

rng = np.random.default_rng(1)
noisy = np.clip(128 + rng.normal(0, 40, (64, 64)), 0, 255).round().astype(np.uint8)
for sigma in (0.5, 1.0, 2.0, 4.0):
    print(f"sigma {sigma}: pixel std {smooth(noisy, sigma).std():.2f} (input {noisy.std():.2f})")

"""
Classic Otsu thresholding
=========================

Build a histogram, scan every cut, and look at the class statistics behind
the chosen threshold.
"""
import numpy as np

from thresh_forge.core import histogram, image_mean_variance
from thresh_forge.otsu import apply_threshold, otsu_threshold, variance_curves

# a dark background with a brighter square, plus mild noise
rng = np.random.default_rng(0)
img = np.full((64, 64), 70.0)
img[16:48, 16:48] = 160
img = np.clip(img + rng.normal(0, 15, img.shape), 0, 255).round().astype(np.uint8)

hist = histogram(img)
mean, var = image_mean_variance(hist)
print(f"image mean {mean:.2f}, variance {var:.2f}")

report = otsu_threshold(hist)
print("threshold:", report.threshold)
print("background weight / mean:", round(report.stats.w_b, 3), round(report.stats.mu_b, 2))
print("foreground weight / mean:", round(report.stats.w_f, 3), round(report.stats.mu_f, 2))

# minimising the within-class variance and maximising the between-class
# variance pick the same cut
curves = variance_curves(hist)
print("argmin within:", int(np.argmin(curves.within[:255])),
      " argmax between:", int(np.argmax(curves.between[:255])))

mask = apply_threshold(img, report.threshold)
print("foreground pixels:", int(mask.labels.sum()), "of", mask.labels.size)

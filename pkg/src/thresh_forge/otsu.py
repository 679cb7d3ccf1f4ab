"""Global Otsu thresholding.

Background is every intensity ``<= t``, foreground every intensity ``> t``.
For a cut ``t`` with class weights ``w_b, w_f``, class means ``mu_b, mu_f``
and class variances ``var_b, var_f``::

    within  = w_b * var_b + w_f * var_f
    between = total_variance - within = w_b * w_f * (mu_b - mu_f) ** 2

Minimising ``within`` and maximising ``between`` pick the same cut.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .core import BinaryMask, Histogram, as_gray_image, image_mean_variance
from .errors import DegenerateHistogram, EmptyImage

LEVELS = np.arange(256, dtype=np.float64)


@dataclass(frozen=True)
class ClassStats:
    w_b: float
    w_f: float
    mu_b: float
    mu_f: float
    var_b: float
    var_f: float


@dataclass(frozen=True)
class ThresholdReport:
    threshold: int
    stats: ClassStats
    sigma_w2: float
    sigma_b2_between: float
    sigma_total2: float

    def to_dict(self) -> dict:
        out = {"threshold": self.threshold}
        out.update(asdict(self.stats))
        out.update(sigma_w2=self.sigma_w2,
                   sigma_b2_between=self.sigma_b2_between,
                   sigma_total2=self.sigma_total2)
        return out


def _check(hist: Histogram) -> None:
    if hist.total <= 0:
        raise EmptyImage("histogram is empty")


def _class_moments(bins: np.ndarray, total: int):
    """Mean and population variance of one class; zeros for an empty class."""
    n = int(bins.sum())
    if n == 0:
        return 0.0, 0.0, 0.0
    p = bins / n
    mu = float(np.dot(LEVELS[:len(bins)], p))
    var = float(np.dot((LEVELS[:len(bins)] - mu) ** 2, p))
    return n / total, mu, var


def class_stats(hist: Histogram, t: int) -> ClassStats:
    _check(hist)
    if not 0 <= t <= 255:
        raise ValueError(f"threshold {t} outside [0, 255]")
    w_b, mu_b, var_b = _class_moments(hist.bins[:t + 1], hist.total)
    fg = np.zeros(256, dtype=np.int64)
    fg[t + 1:] = hist.bins[t + 1:]
    w_f, mu_f, var_f = _class_moments(fg, hist.total)
    return ClassStats(w_b, w_f, mu_b, mu_f, var_b, var_f)


def within_class_variance(hist: Histogram, t: int) -> float:
    s = class_stats(hist, t)
    return s.w_b * s.var_b + s.w_f * s.var_f


def between_class_variance(hist: Histogram, t: int) -> float:
    _, total_var = image_mean_variance(hist)
    # rounding can leave -1e-13 when one class is empty
    return max(0.0, total_var - within_class_variance(hist, t))


@dataclass(frozen=True)
class VarianceCurves:
    """Per-cut class statistics for every t in [0, 255], as float arrays."""

    w_b: np.ndarray
    w_f: np.ndarray
    mu_b: np.ndarray
    mu_f: np.ndarray
    var_b: np.ndarray
    var_f: np.ndarray
    within: np.ndarray
    between: np.ndarray  # w_b * w_f * (mu_b - mu_f) ** 2
    total: float


def variance_curves(hist: Histogram) -> VarianceCurves:
    """All cuts at once from cumulative sums.

    Moments are taken about the global mean so the class variances do not
    lose precision to cancellation.  Cuts that produce the same partition
    (runs of empty bins) get bit-identical values.
    """
    _check(hist)
    counts = hist.bins.astype(np.int64)
    n = hist.total
    n_b = np.cumsum(counts)
    n_f = n - n_b
    mean, total = image_mean_variance(hist)
    dev = LEVELS - mean
    s_b = np.cumsum(counts * dev)
    q_b = np.cumsum(counts * dev * dev)
    s_f = s_b[-1] - s_b
    q_f = q_b[-1] - q_b
    with np.errstate(divide="ignore", invalid="ignore"):
        d_b = np.where(n_b > 0, s_b / n_b, 0.0)
        d_f = np.where(n_f > 0, s_f / n_f, 0.0)
        var_b = np.where(n_b > 0, np.maximum(q_b / n_b - d_b * d_b, 0.0), 0.0)
        var_f = np.where(n_f > 0, np.maximum(q_f / n_f - d_f * d_f, 0.0), 0.0)
    w_b, w_f = n_b / n, n_f / n
    mu_b = np.where(n_b > 0, d_b + mean, 0.0)
    mu_f = np.where(n_f > 0, d_f + mean, 0.0)
    within = w_b * var_b + w_f * var_f
    between = w_b * w_f * (d_b - d_f) ** 2
    return VarianceCurves(w_b, w_f, mu_b, mu_f, var_b, var_f, within, between, total)


def _exact_scores(hist: Histogram):
    """Integer numerators/denominators of the between-class variance per cut.

    With class counts ``n_b, n_f`` and intensity sums ``s_b, s_f``::

        between(t) * N**2 = (s_b * n_f - s_f * n_b) ** 2 / (n_b * n_f)

    Cumulative sums are exact integers, so comparing scores by
    cross-multiplication reproduces the exhaustive definition bit for bit.
    """
    counts = [int(c) for c in hist.bins]
    n_total = hist.total
    s_total = sum(v * c for v, c in enumerate(counts))
    n_b = s_b = 0
    for t in range(255):
        n_b += counts[t]
        s_b += t * counts[t]
        n_f = n_total - n_b
        s_f = s_total - s_b
        if n_b == 0 or n_f == 0:
            yield t, 0, 1
        else:
            yield t, (s_b * n_f - s_f * n_b) ** 2, n_b * n_f


def otsu_threshold(hist: Histogram) -> ThresholdReport:
    """Return the cut in [0, 254] with maximal between-class variance.

    Ties resolve to the smallest cut.  Raises ``DegenerateHistogram`` when
    fewer than two intensity levels are occupied.
    """
    _check(hist)
    if hist.nonzero_count() < 2:
        raise DegenerateHistogram(
            "histogram has a single occupied level; no cut separates it")
    best_t, best_num, best_den = 0, -1, 1
    for t, num, den in _exact_scores(hist):
        if num * best_den > best_num * den:
            best_t, best_num, best_den = t, num, den
    return threshold_report(hist, best_t)


def threshold_report(hist: Histogram, t: int) -> ThresholdReport:
    stats = class_stats(hist, t)
    _, total_var = image_mean_variance(hist)
    within = stats.w_b * stats.var_b + stats.w_f * stats.var_f
    return ThresholdReport(t, stats, within, max(0.0, total_var - within),
                           total_var)


def apply_threshold(img, t: int, method: str = "classic") -> BinaryMask:
    img = as_gray_image(img)
    return BinaryMask((img > t).astype(np.uint8), method=method,
                      threshold_used=int(t))

"""Classic Otsu binarization and the cluster-select-smooth-threshold variant."""
from __future__ import annotations

import time
from contextlib import contextmanager
from dataclasses import dataclass, field, replace
from typing import Optional, Union

import numpy as np

from . import gaussian, otsu
from .core import BinaryMask, as_gray_image, histogram
from .errors import DimensionMismatch
from .kmeans import KMeansConfig, cluster_image, select_cluster

ORDERS = ("cluster-first", "smooth-first")


@dataclass(frozen=True)
class PipelineConfig:
    k: int = 3
    select: Union[str, int] = "brightest"
    sigma: float = 2.0
    kmeans: KMeansConfig = field(default_factory=KMeansConfig)
    spatial: bool = False
    order: str = "cluster-first"

    def __post_init__(self):
        gaussian.kernel_radius(self.sigma)  # validates sigma
        if self.order not in ORDERS:
            raise ValueError(f"order must be one of {ORDERS}")
        if self.kmeans.k != self.k:
            object.__setattr__(self, "kmeans", replace(self.kmeans, k=self.k))


@dataclass
class RunReport:
    method: str
    threshold_report: otsu.ThresholdReport
    histogram: list[int]
    stages: list[dict] = field(default_factory=list)
    kmeans_summary: Optional[dict] = None
    sigma: Optional[float] = None
    timings_ms: dict = field(default_factory=dict)

    def to_dict(self, timings: bool = True) -> dict:
        out = {
            "method": self.method,
            "stages": self.stages,
            "threshold_report": self.threshold_report.to_dict(),
            "kmeans_summary": self.kmeans_summary,
            "sigma": self.sigma,
        }
        if timings:
            out["timings_ms"] = self.timings_ms
        return out


class _Timer:
    def __init__(self):
        self.ms = {}

    @contextmanager
    def __call__(self, stage):
        t0 = time.perf_counter()
        yield
        self.ms[stage] = (time.perf_counter() - t0) * 1e3


def _threshold_stage(img, method, timer):
    with timer("histogram"):
        hist = histogram(img)
    with timer("otsu"):
        report = otsu.otsu_threshold(hist)
    with timer("apply_threshold"):
        mask = otsu.apply_threshold(img, report.threshold, method=method)
    return hist, report, mask


def binarize_classic(img) -> tuple[BinaryMask, RunReport]:
    img = as_gray_image(img)
    timer = _Timer()
    hist, report, mask = _threshold_stage(img, "classic", timer)
    stages = [{"name": "otsu", "threshold": report.threshold,
               "scope": "full-image", "histogram": hist.to_list()}]
    return mask, RunReport("classic", report, hist.to_list(), stages,
                           timings_ms=timer.ms)


def binarize_improved(img, config: PipelineConfig = PipelineConfig()):
    """Cluster, keep the selected cluster, blur, then Otsu-threshold.

    Pixels outside the selected cluster are set to 0 before smoothing and the
    threshold is computed over the whole suppressed image.  With
    ``order="smooth-first"`` the blur runs before clustering instead.
    """
    img = as_gray_image(img)
    timer = _Timer()
    stages = []
    source = img
    if config.order == "smooth-first":
        with timer("smooth"):
            source = gaussian.smooth(img, config.sigma)
        stages.append({"name": "smooth", "sigma": config.sigma})
    # a flat or two-tone image cannot feed k=3 clusters; cap k at what exists
    k_eff = config.k
    if not config.spatial:
        k_eff = min(config.k, int(np.count_nonzero(np.bincount(source.ravel()))))
    km_config = replace(config.kmeans, k=k_eff)
    with timer("kmeans"):
        result, label_map = cluster_image(source, km_config, config.spatial)
    stages.append({"name": "kmeans", "k": config.k, "k_effective": k_eff,
                   "init": config.kmeans.init,
                   "spatial": config.spatial, "iterations": result.iterations})
    with timer("select"):
        region = select_cluster(result, label_map, config.select)
    stages.append({"name": "select", "rule": str(config.select),
                   "cluster": region.meta["cluster"],
                   "pixels": int(region.labels.sum())})
    with timer("suppress"):
        suppressed = np.where(region.labels == 1, source, 0).astype(np.uint8)
    stages.append({"name": "suppress", "fill": 0})
    if config.order == "cluster-first":
        with timer("smooth"):
            smoothed = gaussian.smooth(suppressed, config.sigma)
        stages.append({"name": "smooth", "sigma": config.sigma})
    else:
        smoothed = suppressed
    hist, report, mask = _threshold_stage(smoothed, "improved", timer)
    stages.append({"name": "otsu", "threshold": report.threshold,
                   "scope": "full-image", "histogram": hist.to_list()})
    run = RunReport("improved", report, hist.to_list(), stages,
                    kmeans_summary=result.summary(), sigma=float(config.sigma),
                    timings_ms=timer.ms)
    return mask, run


def misclassification_rate(mask: BinaryMask, truth: BinaryMask) -> float:
    """Fraction of disagreeing pixels, minimised over label polarity."""
    a, b = mask.labels, truth.labels
    if a.shape != b.shape:
        raise DimensionMismatch(f"mask {a.shape} vs truth {b.shape}")
    wrong = int(np.count_nonzero(a != b))
    return min(wrong, a.size - wrong) / a.size

"""Synthetic shape images with ground truth, and the classic-vs-improved harness.

Noise comes from the SplitMix64/Box-Muller stream in :mod:`thresh_forge._rng`,
so a given spec renders to the same bytes everywhere.
"""
from __future__ import annotations

import csv
import io
import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from typing import Union

import numpy as np

from . import _rng
from .core import BinaryMask, round_half_up
from .errors import ShapeOutOfBounds
from .pipeline import PipelineConfig, binarize_classic, binarize_improved, misclassification_rate


@dataclass(frozen=True)
class Disk:
    cx: float
    cy: float
    r: float

    def contains(self, xx, yy):
        return (xx - self.cx) ** 2 + (yy - self.cy) ** 2 <= self.r ** 2

    def bounds(self):
        return (self.cx - self.r, self.cy - self.r, self.cx + self.r, self.cy + self.r)


@dataclass(frozen=True)
class TriLobe:
    """Three overlapping lobes fanned above a vertical stalk.

    ``(cx, cy)`` is the point where the lobes meet the stalk; ``r`` is the
    lobe radius.  The stalk is ``2 * stalk_half_width`` wide and runs
    ``stalk_length`` pixels downward.
    """

    cx: float
    cy: float
    r: float
    stalk_half_width: float = 0.0
    stalk_length: float = 0.0

    def __post_init__(self):
        if self.stalk_half_width == 0.0:
            object.__setattr__(self, "stalk_half_width", self.r / 3)
        if self.stalk_length == 0.0:
            object.__setattr__(self, "stalk_length", 1.5 * self.r)

    def lobes(self):
        r = self.r
        return [Disk(self.cx - 1.1 * r, self.cy - 1.2 * r, r),
                Disk(self.cx, self.cy - 1.7 * r, r),
                Disk(self.cx + 1.1 * r, self.cy - 1.2 * r, r)]

    def contains(self, xx, yy):
        inside = np.zeros(np.broadcast(xx, yy).shape, dtype=bool)
        for lobe in self.lobes():
            inside |= lobe.contains(xx, yy)
        stalk = ((np.abs(xx - self.cx) <= self.stalk_half_width)
                 & (yy >= self.cy - self.r) & (yy <= self.cy + self.stalk_length))
        return inside | stalk

    def bounds(self):
        boxes = [lobe.bounds() for lobe in self.lobes()]
        boxes.append((self.cx - self.stalk_half_width, self.cy - self.r,
                      self.cx + self.stalk_half_width, self.cy + self.stalk_length))
        return (min(b[0] for b in boxes), min(b[1] for b in boxes),
                max(b[2] for b in boxes), max(b[3] for b in boxes))


Shape = Union[Disk, TriLobe]


def default_shape(kind: str, width: int, height: int) -> Shape:
    """Centred shape that fits comfortably inside a ``width`` x ``height`` frame."""
    side = min(width, height)
    if kind == "disk":
        return Disk((width - 1) / 2, (height - 1) / 2, side / 4)
    if kind in ("tri-lobe", "tri_lobe"):
        r = side / 7
        return TriLobe((width - 1) / 2, (height - 1) / 2 + 0.35 * r, r)
    raise ValueError(f"unknown shape {kind!r}")


@dataclass(frozen=True)
class SynthSpec:
    width: int = 128
    height: int = 128
    fg_level: int = 180
    bg_level: int = 60
    shape: Shape = field(default_factory=lambda: default_shape("disk", 128, 128))
    noise_sigma: float = 0.0
    seed: int = 1

    def validate(self):
        if self.width <= 0 or self.height <= 0:
            raise ValueError("image size must be positive")
        for level in (self.fg_level, self.bg_level):
            if not 0 <= level <= 255:
                raise ValueError(f"level {level} outside [0, 255]")
        if self.fg_level == self.bg_level:
            raise ValueError("fg_level and bg_level must differ")
        if self.noise_sigma < 0:
            raise ValueError("noise_sigma must be non-negative")
        x0, y0, x1, y1 = self.shape.bounds()
        if x0 < 0 or y0 < 0 or x1 > self.width - 1 or y1 > self.height - 1:
            raise ShapeOutOfBounds(
                f"shape bounds {(x0, y0, x1, y1)} exceed {self.width}x{self.height}")


def render_truth(spec: SynthSpec) -> BinaryMask:
    yy, xx = np.mgrid[0:spec.height, 0:spec.width]
    inside = spec.shape.contains(xx.astype(np.float64), yy.astype(np.float64))
    return BinaryMask(inside.astype(np.uint8), method="truth")


def generate(spec: SynthSpec) -> tuple[np.ndarray, BinaryMask]:
    """Render the noisy image and its noiseless ground-truth mask."""
    spec.validate()
    truth = render_truth(spec)
    clean = np.where(truth.labels == 1, spec.fg_level, spec.bg_level).astype(np.float64)
    if spec.noise_sigma > 0:
        noise = _rng.standard_normal(spec.seed, clean.size).reshape(clean.shape)
        clean = clean + spec.noise_sigma * noise
    img = np.clip(round_half_up(clean), 0, 255).astype(np.uint8)
    return img, truth


@dataclass
class ComparisonReport:
    spec: dict
    config: dict
    seeds: list[int]
    classic: list[float]
    improved: list[float]

    @property
    def classic_mean(self) -> float:
        return float(np.mean(self.classic))

    @property
    def improved_mean(self) -> float:
        return float(np.mean(self.improved))

    @property
    def improved_wins(self) -> int:
        return sum(i < c for c, i in zip(self.classic, self.improved))

    @property
    def classic_wins(self) -> int:
        return sum(c < i for c, i in zip(self.classic, self.improved))

    @property
    def ties(self) -> int:
        return len(self.seeds) - self.improved_wins - self.classic_wins

    def to_dict(self) -> dict:
        return {
            "spec": self.spec,
            "config": self.config,
            "runs": [{"seed": s, "classic_rate": c, "improved_rate": i}
                     for s, c, i in zip(self.seeds, self.classic, self.improved)],
            "classic_mean": self.classic_mean,
            "improved_mean": self.improved_mean,
            "improved_wins": self.improved_wins,
            "classic_wins": self.classic_wins,
            "ties": self.ties,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["seed", "classic_rate", "improved_rate"])
        for s, c, i in zip(self.seeds, self.classic, self.improved):
            writer.writerow([s, repr(c), repr(i)])
        return buf.getvalue()


def max_workers() -> int:
    env = os.environ.get("THRESH_FORGE_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


def _one_seed(spec: SynthSpec, config: PipelineConfig, seed: int):
    img, truth = generate(replace(spec, seed=seed))
    classic, _ = binarize_classic(img)
    improved, _ = binarize_improved(img, config)
    return (misclassification_rate(classic, truth),
            misclassification_rate(improved, truth))


def _shape_dict(shape: Shape) -> dict:
    return {"kind": "disk" if isinstance(shape, Disk) else "tri_lobe", **asdict(shape)}


def run_comparison(spec: SynthSpec, config: PipelineConfig = PipelineConfig(),
                   n_seeds: int = 20, workers: int | None = None) -> ComparisonReport:
    """Score classic and improved binarization on seeds ``1..n_seeds``."""
    if n_seeds < 1:
        raise ValueError("n_seeds must be positive")
    spec.validate()
    seeds = list(range(1, n_seeds + 1))
    workers = min(workers or max_workers(), n_seeds)
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            rates = list(pool.map(lambda s: _one_seed(spec, config, s), seeds))
    else:
        rates = [_one_seed(spec, config, s) for s in seeds]
    spec_info = {k: v for k, v in asdict(spec).items() if k not in ("shape", "seed")}
    spec_info["shape"] = _shape_dict(spec.shape)
    config_info = {"k": config.k, "select": str(config.select), "sigma": config.sigma,
                   "init": config.kmeans.init, "order": config.order,
                   "spatial": config.spatial}
    return ComparisonReport(spec_info, config_info, seeds,
                            [r[0] for r in rates], [r[1] for r in rates])

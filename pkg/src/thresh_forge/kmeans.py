"""Lloyd's K-means over pixel feature vectors."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .core import BinaryMask, as_gray_image
from .errors import DimensionMismatch, EmptyInput, IndexOutOfRange, TooFewDistinctPoints

INIT_METHODS = ("first_k", "quantile", "random")


def euclidean_distance(p: Sequence[float], q: Sequence[float]) -> float:
    p = np.atleast_1d(np.asarray(p, dtype=np.float64))
    q = np.atleast_1d(np.asarray(q, dtype=np.float64))
    if p.shape != q.shape:
        raise DimensionMismatch(f"points of shape {p.shape} and {q.shape}")
    return math.dist(p.tolist(), q.tolist())


@dataclass(frozen=True)
class KMeansConfig:
    """Clustering parameters.

    ``init`` is one of ``first_k`` (first k distinct points in input order),
    ``quantile`` (evenly spaced picks from the sorted distinct points) or
    ``random`` (k distinct points drawn with ``seed``).
    """

    k: int = 3
    init: str = "quantile"
    seed: Optional[int] = None
    max_iter: int = 100
    tol: float = 1e-6

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be positive")
        if self.init not in INIT_METHODS:
            raise ValueError(f"init must be one of {INIT_METHODS}, got {self.init!r}")
        if self.init == "random" and self.seed is None:
            raise ValueError("random init requires an explicit seed")
        if self.max_iter < 1:
            raise ValueError("max_iter must be positive")
        if self.tol < 0:
            raise ValueError("tol must be non-negative")


@dataclass
class KMeansResult:
    centroids: np.ndarray  # (k, d)
    labels: np.ndarray  # (n,)
    iterations: int
    inertia: float
    converged: bool = True
    inertia_history: list[float] = field(default_factory=list)

    @property
    def k(self) -> int:
        return len(self.centroids)

    @property
    def counts(self) -> np.ndarray:
        return np.bincount(self.labels, minlength=self.k)

    def summary(self) -> dict:
        return {
            "centroids": [[float(c) for c in row] for row in self.centroids],
            "counts": [int(c) for c in self.counts],
            "iterations": int(self.iterations),
            "inertia": float(self.inertia),
        }


def _as_points(points) -> np.ndarray:
    x = np.asarray(points, dtype=np.float64)
    if x.ndim == 1:
        x = x[:, None]
    if x.ndim != 2:
        raise DimensionMismatch(f"points must be (n, d), got shape {x.shape}")
    if x.shape[0] == 0:
        raise EmptyInput("no points to cluster")
    return x


def _initial_centroids(x: np.ndarray, config: KMeansConfig) -> np.ndarray:
    k = config.k
    if config.init == "first_k":
        _, first = np.unique(x, axis=0, return_index=True)
        return x[np.sort(first)[:k]].copy()
    distinct = np.unique(x, axis=0)
    if config.init == "quantile":
        idx = np.round(np.linspace(0, len(distinct) - 1, k)).astype(int)
        return distinct[idx].copy()
    rng = np.random.default_rng(config.seed)
    idx = np.sort(rng.choice(len(distinct), size=k, replace=False))
    return distinct[idx].copy()


def _sq_distances(x: np.ndarray, centroids: np.ndarray) -> np.ndarray:
    return ((x[:, None, :] - centroids[None, :, :]) ** 2).sum(axis=2)


def _repair_empty(x, labels, centroids, d2):
    """Give each empty cluster the point currently farthest from its centroid."""
    k = len(centroids)
    counts = np.bincount(labels, minlength=k)
    own = d2[np.arange(len(x)), labels].copy()
    for j in np.flatnonzero(counts == 0):
        movable = counts[labels] > 1
        cand = np.where(movable, own, -1.0)
        i = int(np.argmax(cand))
        counts[labels[i]] -= 1
        labels[i] = j
        counts[j] += 1
        own[i] = 0.0
    return labels


def _means(x, labels, k):
    counts = np.bincount(labels, minlength=k)[:, None]
    sums = np.zeros((k, x.shape[1]))
    np.add.at(sums, labels, x)
    means = sums / counts
    # one compensation pass; makes the mean of identical values exact
    resid = np.zeros_like(sums)
    np.add.at(resid, labels, x - means[labels])
    return means + resid / counts


def kmeans(points, config: KMeansConfig) -> KMeansResult:
    """Cluster ``points`` (shape (n,) or (n, d)) with Lloyd iterations.

    Each iteration assigns every point to its nearest centroid (ties go to
    the lowest index), refills empty clusters, and moves every centroid to
    the mean of its members.  Stops once no centroid moves farther than
    ``tol`` or after ``max_iter`` iterations.
    """
    x = _as_points(points)
    n_distinct = len(np.unique(x, axis=0))
    if n_distinct < config.k:
        raise TooFewDistinctPoints(
            f"{n_distinct} distinct points cannot seed {config.k} clusters")
    centroids = _initial_centroids(x, config)
    history = []
    converged = False
    it = 0
    for it in range(1, config.max_iter + 1):
        d2 = _sq_distances(x, centroids)
        labels = np.argmin(d2, axis=1)
        labels = _repair_empty(x, labels, centroids, d2)
        new = _means(x, labels, config.k)
        history.append(float(((x - new[labels]) ** 2).sum()))
        shift = float(np.sqrt(((new - centroids) ** 2).sum(axis=1)).max())
        centroids = new
        if shift <= config.tol:
            converged = True
            break
    return KMeansResult(centroids, labels, it, history[-1], converged, history)


def pixel_features(img, spatial: bool = False) -> np.ndarray:
    """Per-pixel features: intensity / 255, plus x / width and y / height if spatial."""
    img = as_gray_image(img)
    h, w = img.shape
    feats = [img.ravel().astype(np.float64) / 255.0]
    if spatial:
        yy, xx = np.mgrid[0:h, 0:w]
        feats += [xx.ravel() / w, yy.ravel() / h]
    return np.stack(feats, axis=1)


def cluster_image(img, config: KMeansConfig, spatial: bool = False):
    """Cluster the pixels of ``img``; returns ``(result, label_map)``."""
    img = as_gray_image(img)
    result = kmeans(pixel_features(img, spatial), config)
    return result, result.labels.reshape(img.shape)


def select_cluster(result: KMeansResult, label_map, rule="brightest") -> BinaryMask:
    """Mask of one cluster.

    ``rule`` is ``"brightest"`` (largest centroid intensity), ``"largest"``
    (most members), an ``int`` cluster index, or a string ``"index:N"``.
    Ties go to the lowest cluster index.
    """
    label_map = np.asarray(label_map)
    if isinstance(rule, str) and rule.startswith("index:"):
        rule = int(rule.split(":", 1)[1])
    if rule == "brightest":
        chosen = int(np.argmax(result.centroids[:, 0]))
    elif rule == "largest":
        chosen = int(np.argmax(np.bincount(label_map.ravel(), minlength=result.k)))
    elif isinstance(rule, (int, np.integer)) and not isinstance(rule, bool):
        if not 0 <= rule < result.k:
            raise IndexOutOfRange(f"cluster {rule} not in [0, {result.k})")
        chosen = int(rule)
    else:
        raise ValueError(f"unknown selection rule {rule!r}")
    return BinaryMask((label_map == chosen).astype(np.uint8), method="cluster",
                      meta={"cluster": chosen})

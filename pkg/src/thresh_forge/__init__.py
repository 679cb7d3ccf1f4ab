"""Otsu thresholding, Gaussian smoothing, K-means and their combination."""
from .core import BinaryMask, Histogram, histogram, image_mean_variance, to_grayscale
from .errors import (DegenerateHistogram, DimensionMismatch, EmptyImage, EmptyInput,
                     ImageFormatError, IndexOutOfRange, InvalidSigma, ShapeOutOfBounds,
                     ThreshForgeError, TooFewDistinctPoints)
from .gaussian import gaussian_density, kernel_1d, smooth
from .imageio import read_image, write_image
from .kmeans import KMeansConfig, KMeansResult, cluster_image, euclidean_distance, select_cluster
from .otsu import (ClassStats, ThresholdReport, apply_threshold, between_class_variance,
                   class_stats, otsu_threshold, within_class_variance)
from .pipeline import (PipelineConfig, RunReport, binarize_classic, binarize_improved,
                       misclassification_rate)
from .synth import ComparisonReport, Disk, SynthSpec, TriLobe, generate, run_comparison

__version__ = "0.1.0"

"""
K-means on pixel intensities
============================

The four-point example traced by hand, then clustering an image into tones.
"""
import numpy as np

from thresh_forge.kmeans import KMeansConfig, cluster_image, kmeans, select_cluster
from thresh_forge.synth import SynthSpec, generate

res = kmeans([1, 2, 10, 11], KMeansConfig(k=2, init="first_k"))
print("centroids", res.centroids.ravel(), "labels", res.labels, "iterations", res.iterations)
print("inertia per iteration", res.inertia_history)

img, truth = generate(SynthSpec(noise_sigma=20, seed=3))
result, label_map = cluster_image(img, KMeansConfig(k=3))
for j in range(result.k):
    print(f"cluster {j}: centroid {255 * result.centroids[j, 0]:.1f}, "
          f"{int(result.counts[j])} pixels")

bright = select_cluster(result, label_map, "brightest")
agree = (bright.labels == truth.labels).mean()
print(f"brightest cluster agrees with the truth mask on {100 * agree:.2f}% of pixels")

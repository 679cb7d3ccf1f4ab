import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from thresh_forge.core import Histogram, gray_image, histogram, image_mean_variance
from thresh_forge.errors import DegenerateHistogram, EmptyImage
from thresh_forge.otsu import (apply_threshold, between_class_variance, class_stats,
                               otsu_threshold, variance_curves, within_class_variance)

from oracles import (brute_force_otsu, per_pixel_within, pixels_of, seeded_histogram,
                     seeded_image)

TWO_POINT = Histogram.from_counts({0: 2, 255: 2})
SINGLE = Histogram.from_counts({128: 4})


def test_class_stats_examples():
    s = class_stats(TWO_POINT, 0)
    assert (s.w_b, s.w_f, s.mu_b, s.mu_f, s.var_b, s.var_f) == (0.5, 0.5, 0, 255, 0, 0)
    s = class_stats(TWO_POINT, 255)
    assert (s.w_b, s.w_f, s.var_b) == (1.0, 0.0, 16256.25)
    assert (s.mu_f, s.var_f) == (0.0, 0.0)
    s = class_stats(Histogram.from_counts({10: 3, 20: 1}), 15)
    assert (s.w_b, s.mu_b, s.var_b, s.w_f, s.mu_f, s.var_f) == (0.75, 10, 0, 0.25, 20, 0)


def test_class_stats_errors():
    with pytest.raises(EmptyImage):
        class_stats(Histogram(np.zeros(256, dtype=np.int64), 0), 3)
    with pytest.raises(ValueError):
        class_stats(TWO_POINT, 256)


def test_within_class_examples():
    assert within_class_variance(TWO_POINT, 0) == 0
    assert all(within_class_variance(SINGLE, t) == 0 for t in (0, 100, 128, 255))


@pytest.mark.parametrize("seed", range(5))
def test_within_class_matches_per_pixel(seed):
    img = seeded_image(seed)
    assert within_class_variance(histogram(img), 100) == pytest.approx(
        per_pixel_within(img, 100), rel=1e-12, abs=1e-12)


def test_between_class_examples():
    assert between_class_variance(TWO_POINT, 0) == 16256.25
    assert all(between_class_variance(SINGLE, t) == 0 for t in (0, 127, 128, 254))


def test_otsu_examples():
    rep = otsu_threshold(TWO_POINT)
    assert rep.threshold == 0
    assert rep.sigma_b2_between == 16256.25
    assert rep.sigma_w2 == 0
    with pytest.raises(DegenerateHistogram):
        otsu_threshold(SINGLE)


@pytest.mark.parametrize("seed", range(10))
def test_otsu_matches_brute_force_on_8x8(seed):
    img = seeded_image(seed)
    assert otsu_threshold(histogram(img)).threshold == brute_force_otsu(img)[0]


@pytest.mark.parametrize("seed", range(100))
def test_fast_scan_agrees_with_naive_per_cut(seed):
    bins = seeded_histogram(seed, sparse=seed % 2 == 0)
    hist = Histogram.from_counts(bins)
    t, score = brute_force_otsu(pixels_of(bins))
    rep = otsu_threshold(hist)
    assert rep.threshold == t
    assert rep.sigma_b2_between == pytest.approx(float(score), rel=1e-9)


@pytest.mark.parametrize("seed", range(100))
def test_identities_on_random_histograms(seed):
    hist = Histogram.from_counts(seeded_histogram(seed, sparse=seed % 3 == 0))
    _, total = image_mean_variance(hist)
    within = [within_class_variance(hist, t) for t in range(255)]
    between = [between_class_variance(hist, t) for t in range(255)]
    for t in range(255):
        assert within[t] + between[t] == pytest.approx(total, rel=1e-9)
        s = class_stats(hist, t)
        assert s.w_b + s.w_f == pytest.approx(1.0, abs=1e-12)
        assert s.w_b * s.mu_b + s.w_f * s.mu_f == pytest.approx(
            image_mean_variance(hist)[0], rel=1e-9)
        if s.w_b > 0 and s.w_f > 0:
            assert between[t] == pytest.approx(
                s.w_b * s.w_f * (s.mu_b - s.mu_f) ** 2, rel=1e-9)
    assert int(np.argmin(within)) == int(np.argmax(between)) == otsu_threshold(hist).threshold


@settings(max_examples=50, deadline=None)
@given(arrays(np.int64, 256, elements=st.integers(0, 40)), st.integers(2, 50))
def test_threshold_invariant_under_histogram_scaling(bins, factor):
    if np.count_nonzero(bins) < 2:
        bins[[3, 250]] += 1
    hist = Histogram.from_counts(bins)
    scaled = Histogram.from_counts(bins * factor)
    assert otsu_threshold(scaled).threshold == otsu_threshold(hist).threshold


def test_report_identity_and_json_keys():
    rep = otsu_threshold(histogram(seeded_image(3, (32, 32))))
    assert rep.sigma_w2 + rep.sigma_b2_between == pytest.approx(rep.sigma_total2, rel=1e-9)
    d = rep.to_dict()
    assert list(d) == ["threshold", "w_b", "w_f", "mu_b", "mu_f", "var_b", "var_f",
                       "sigma_w2", "sigma_b2_between", "sigma_total2"]
    json.dumps(d)


def test_apply_threshold_examples():
    m = apply_threshold(gray_image([0, 0, 255, 255], 2, 2), 0)
    assert m.labels.ravel().tolist() == [0, 0, 1, 1]
    assert m.threshold_used == 0
    assert apply_threshold(gray_image([5], 1, 1), 255).labels.ravel().tolist() == [0]


@pytest.mark.parametrize("seed", range(5))
def test_apply_threshold_counts_match_weights(seed):
    img = seeded_image(seed, (20, 20))
    hist = histogram(img)
    rep = otsu_threshold(hist)
    mask = apply_threshold(img, rep.threshold)
    assert mask.labels.sum() == round(rep.stats.w_f * hist.total)
    assert (1 - mask.labels).sum() == round(rep.stats.w_b * hist.total)


@pytest.mark.parametrize("seed", range(100))
def test_cumulative_curves_match_per_cut_recomputation(seed):
    hist = Histogram.from_counts(seeded_histogram(500 + seed, sparse=seed % 2 == 1))
    c = variance_curves(hist)
    for t in range(256):
        s = class_stats(hist, t)
        assert c.w_b[t] == pytest.approx(s.w_b, abs=1e-15)
        assert c.mu_b[t] == pytest.approx(s.mu_b, rel=1e-12, abs=1e-9)
        assert c.mu_f[t] == pytest.approx(s.mu_f, rel=1e-12, abs=1e-9)
        assert c.var_b[t] == pytest.approx(s.var_b, rel=1e-9, abs=1e-9)
        assert c.var_f[t] == pytest.approx(s.var_f, rel=1e-9, abs=1e-9)
        assert c.within[t] == pytest.approx(within_class_variance(hist, t), rel=1e-9, abs=1e-9)
    assert int(np.argmax(c.between[:255])) == otsu_threshold(hist).threshold


def test_curves_identical_on_empty_bin_plateaus():
    c = variance_curves(Histogram.from_counts({10: 3, 20: 5, 200: 2}))
    assert len(set(c.within[20:200].tolist())) == 1
    assert len(set(c.between[20:200].tolist())) == 1

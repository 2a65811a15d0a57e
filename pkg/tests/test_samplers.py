"""Tests for deterministic point-set generation.

Distributional checks use fixed seeds with comfortable critical values
(alpha = 0.001), so they are deterministic pass/fail, not flaky.
"""

import math

import numpy as np
import pytest
import scipy.stats
from numpy.testing import assert_allclose, assert_array_equal

from nysquad.samplers import (
    SeededGenerator,
    beta25_inverse_cdf,
    generate,
    halton,
    landmark_mix,
)

# Kolmogorov-Smirnov critical value at alpha = 0.001 (asymptotic).
KS_CRIT = 1.9495


def ks_statistic(sample):
    """One-sample KS distance to the uniform CDF."""
    x = np.sort(sample)
    n = x.size
    up = np.arange(1, n + 1) / n - x
    down = x - np.arange(0, n) / n
    return max(up.max(), down.max())


class TestSeededGenerator:
    def test_reproducible(self):
        a = SeededGenerator(7).numpy_rng().random(5)
        b = SeededGenerator(7).numpy_rng().random(5)
        assert_array_equal(a, b)

    def test_children_are_independent_streams(self):
        gen = SeededGenerator(7)
        y = gen.child("Y").numpy_rng().random(4)
        z = gen.child("Z").numpy_rng().random(4)
        assert not np.array_equal(y, z)
        assert_array_equal(y, SeededGenerator(7).child("Y").numpy_rng().random(4))

    def test_child_labels_compose(self):
        gen = SeededGenerator(3)
        assert gen.child("trial", 8, 2).stream == gen.child("trial").child(8).child(2).stream

    def test_string_and_int_labels_distinct(self):
        gen = SeededGenerator(0)
        assert gen.child("1").stream != gen.child(1).stream

    def test_rejects_negative_labels(self):
        with pytest.raises(ValueError):
            SeededGenerator(0).child(-3)

    def test_frozen(self):
        gen = SeededGenerator(1)
        with pytest.raises(Exception):
            gen.seed = 2


class TestGrid:
    def test_values(self):
        assert_array_equal(generate("grid", 4, 1, SeededGenerator(0)),
                           [[0.25], [0.5], [0.75], [1.0]])

    def test_one_dimension_only(self):
        with pytest.raises(ValueError):
            generate("grid", 4, 2, SeededGenerator(0))


class TestHalton:
    def test_unscrambled_classic_sequence(self):
        pts = halton(7, 2, scramble=False)
        assert_allclose(pts[:, 0],
                        [1 / 2, 1 / 4, 3 / 4, 1 / 8, 5 / 8, 3 / 8, 7 / 8], rtol=0)
        assert_allclose(pts[:3, 1], [1 / 3, 2 / 3, 1 / 9], rtol=0)

    def test_scrambled_deterministic_and_seed_sensitive(self):
        a = halton(50, 3, SeededGenerator(1))
        b = halton(50, 3, SeededGenerator(1))
        c = halton(50, 3, SeededGenerator(2))
        assert_array_equal(a, b)
        assert not np.array_equal(a, c)

    def test_range_and_shape(self):
        pts = halton(200, 5, SeededGenerator(3))
        assert pts.shape == (200, 5)
        assert ((pts >= 0) & (pts < 1)).all()

    def test_scramble_requires_generator(self):
        with pytest.raises(ValueError):
            halton(10, 1)

    def test_dimension_limit(self):
        with pytest.raises(ValueError):
            halton(10, 16, SeededGenerator(0))

    def test_scrambled_is_uniform(self):
        n = 1 << 14
        pts = halton(n, 2, SeededGenerator(4))
        for j in range(2):
            assert ks_statistic(pts[:, j]) <= KS_CRIT / math.sqrt(n)

    def test_scrambling_preserves_stratification(self):
        # any 2^k consecutive-index points in base 2 still hit each dyadic
        # interval of width 1/2^k exactly once
        pts = halton(16, 1, SeededGenerator(5))[:, 0]
        for k in (2, 4):
            for lo in range(0, 16, 1 << k):
                cells = np.floor(pts[lo:lo + (1 << k)] * (1 << k)).astype(int)
                assert sorted(cells) == list(range(1 << k))

    def test_prefix_property(self):
        gen = SeededGenerator(6)
        assert_array_equal(halton(64, 2, gen)[:16], halton(16, 2, gen))


class TestBeta25:
    def test_inverse_cdf_matches_scipy(self):
        u = np.linspace(0.001, 0.999, 57)
        want = scipy.stats.beta(2, 5).ppf(u)
        assert_allclose(beta25_inverse_cdf(u), want, atol=2.0 ** -29)

    def test_inverse_cdf_monotone_and_bounded(self):
        u = np.linspace(0, 1, 101)
        x = beta25_inverse_cdf(u)
        assert (np.diff(x) >= 0).all()
        assert x[0] <= 2.0 ** -29
        # near u = 1 the polynomial CDF saturates to 1.0 in double
        # precision once 6 (1 - x)^5 < eps, stalling the bisection there
        assert 0.999 <= x[-1] <= 1.0

    def test_sample_mean(self):
        n = 20_000
        x = generate("beta25", n, 1, SeededGenerator(8)).ravel()
        se = math.sqrt(scipy.stats.beta(2, 5).var() / n)
        assert abs(x.mean() - 2.0 / 7.0) <= 3 * se

    def test_chi_square_against_beta_cdf(self):
        n, bins = 20_000, 30
        x = generate("beta25", n, 1, SeededGenerator(9)).ravel()
        edges = np.linspace(0, 1, bins + 1)
        counts, _ = np.histogram(x, edges)
        probs = np.diff(scipy.stats.beta(2, 5).cdf(edges))
        _, p = scipy.stats.chisquare(counts, n * probs)
        assert p > 0.001


class TestGenerate:
    def test_iid_uniform(self):
        pts = generate("iid-uniform", 500, 3, SeededGenerator(10))
        assert pts.shape == (500, 3)
        assert ((pts >= 0) & (pts < 1)).all()
        assert_array_equal(pts, generate("iid-uniform", 500, 3, SeededGenerator(10)))

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            generate("sobol", 4, 1, SeededGenerator(0))

    def test_negative_count(self):
        with pytest.raises(ValueError):
            generate("grid", -1, 1, SeededGenerator(0))

    def test_zero_points(self):
        assert generate("iid-uniform", 0, 2, SeededGenerator(0)).shape == (0, 2)


class TestLandmarkMix:
    def test_prefix_and_size(self):
        gen = SeededGenerator(11)
        structured = generate("grid", 8, 1, gen.child("H"))
        mix = landmark_mix(structured, 8, 1, gen.child("noise"))
        assert mix.shape == (8 + 160, 1)
        assert_array_equal(mix[:8], structured)

    def test_contamination_is_beta(self):
        gen = SeededGenerator(12)
        mix = landmark_mix(np.empty((0, 1)), 50, 1, gen)
        tail = mix[:, 0]
        assert tail.size == 1000
        se = math.sqrt(scipy.stats.beta(2, 5).var() / tail.size)
        assert abs(tail.mean() - 2.0 / 7.0) <= 3 * se

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            landmark_mix(np.zeros((3, 2)), 3, 1, SeededGenerator(0))

"""Energy, gradient, and coordinate plumbing."""

import math

import numpy as np
import pytest

from pairphase import (
    Configuration,
    GapVector,
    KernelParam,
    energy,
    gap_energy,
    gradient,
    reflect,
    to_configuration,
    to_gaps,
)


class TestKernelParam:
    def test_accepts_positive_exponent(self):
        assert KernelParam(0.5).q == 0.5
        assert KernelParam(2).q == 2.0

    @pytest.mark.parametrize("bad", [0.0, -1.0, float("nan"), float("inf")])
    def test_rejects_nonpositive_or_nonfinite(self, bad):
        with pytest.raises(ValueError):
            KernelParam(bad)


class TestConfiguration:
    def test_sorts_input(self):
        config = Configuration([0.9, 0.1, 0.5])
        assert np.array_equal(config.points, [0.1, 0.5, 0.9])

    def test_allows_ties(self):
        config = Configuration([0.0, 0.0, 1.0])
        assert config.k == 3

    def test_clips_rounding_noise(self):
        config = Configuration([-1e-12, 1.0 + 1e-12])
        assert config.points[0] == 0.0
        assert config.points[-1] == 1.0

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            Configuration([0.0, 1.1])
        with pytest.raises(ValueError):
            Configuration([-0.2, 0.5])

    def test_rejects_empty_and_nonfinite(self):
        with pytest.raises(ValueError):
            Configuration([])
        with pytest.raises(ValueError):
            Configuration([0.1, float("nan")])

    def test_points_are_read_only(self):
        config = Configuration([0.0, 1.0])
        with pytest.raises(ValueError):
            config.points[0] = 0.5


class TestEnergyClosedForms:
    def test_single_pair(self):
        assert energy(Configuration([0.0, 1.0]), KernelParam(1.7)) == pytest.approx(
            math.exp(-1.0), abs=1e-15
        )

    @pytest.mark.parametrize("q", [0.5, 1.0, 1.5, 2.0])
    def test_three_points_midpoint(self, q):
        want = 2.0 * math.exp(-(0.5**q)) + math.exp(-1.0)
        got = energy(Configuration([0.0, 0.5, 1.0]), KernelParam(q))
        assert got == pytest.approx(want, abs=1e-14)

    def test_coincident_pair_counts_one(self):
        # (0, 0, 1): one coincident pair plus two unit-distance pairs.
        got = energy(Configuration([0.0, 0.0, 1.0]), KernelParam(1.3))
        assert got == pytest.approx(1.0 + 2.0 * math.exp(-1.0), abs=1e-14)

    def test_reflection_invariance(self):
        config = Configuration([0.0, 0.12, 0.55, 0.81, 1.0])
        kernel = KernelParam(1.4)
        assert energy(config, kernel) == pytest.approx(
            energy(reflect(config), kernel), abs=1e-14
        )

    def test_gap_energy_matches_point_energy(self):
        config = Configuration([0.0, 0.2, 0.45, 0.9])
        kernel = KernelParam(0.8)
        assert gap_energy(to_gaps(config), kernel) == pytest.approx(
            energy(config, kernel), abs=1e-14
        )


class TestGradient:
    @pytest.mark.parametrize("q", [0.5, 1.0, 1.4, 2.0])
    def test_matches_finite_differences(self, q):
        rng = np.random.default_rng(7)
        kernel = KernelParam(q)
        for _ in range(20):
            pts = np.sort(rng.uniform(0.05, 0.95, 6))
            if np.diff(pts).min() < 1e-2:
                continue
            config = Configuration(pts)
            grad = gradient(config, kernel)
            h = 1e-6
            for idx in range(6):
                plus = pts.copy()
                minus = pts.copy()
                plus[idx] += h
                minus[idx] -= h
                fd = (
                    energy(Configuration(np.sort(plus)), kernel)
                    - energy(Configuration(np.sort(minus)), kernel)
                ) / (2 * h)
                assert grad[idx] == pytest.approx(fd, abs=1e-6)

    def test_translation_invariance_means_zero_sum(self):
        config = Configuration([0.1, 0.3, 0.35, 0.8])
        for q in (0.5, 1.0, 2.0):
            assert gradient(config, KernelParam(q)).sum() == pytest.approx(
                0.0, abs=1e-12
            )

    def test_reflection_antisymmetry(self):
        config = Configuration([0.05, 0.3, 0.62, 0.9])
        kernel = KernelParam(1.2)
        g = gradient(config, kernel)
        g_mirror = gradient(reflect(config), kernel)
        assert np.allclose(g_mirror, -g[::-1], atol=1e-12)

    def test_finite_at_collision_below_one(self):
        # d**(q-1) diverges at d = 0 for q < 1; the distance floor keeps the
        # push finite and outward.
        g = gradient(Configuration([0.5, 0.5]), KernelParam(0.5))
        assert np.all(np.isfinite(g))
        assert g[0] > 0 and g[1] < 0

    def test_q_equal_one_collision_uses_one_sided_slope(self):
        g = gradient(Configuration([0.5, 0.5]), KernelParam(1.0))
        assert g[0] == pytest.approx(1.0, abs=1e-12)
        assert g[1] == pytest.approx(-1.0, abs=1e-12)


class TestGapPlumbing:
    def test_round_trip(self):
        config = Configuration([0.0, 0.25, 0.7, 1.0])
        back = to_configuration(to_gaps(config))
        assert np.allclose(back.points, config.points, atol=1e-15)

    def test_origin_shift(self):
        gaps = GapVector([0.2, 0.3])
        config = to_configuration(gaps, origin=0.4)
        assert np.allclose(config.points, [0.4, 0.6, 0.9], atol=1e-15)

    def test_rejects_overflowing_span(self):
        with pytest.raises(ValueError):
            to_configuration(GapVector([0.6, 0.3]), origin=0.2)

    def test_gap_vector_validation(self):
        with pytest.raises(ValueError):
            GapVector([0.5, -0.1])
        with pytest.raises(ValueError):
            GapVector([0.7, 0.7])

    def test_reflect_is_an_involution(self):
        config = Configuration([0.0, 0.3, 0.9])
        assert np.allclose(
            reflect(reflect(config)).points, config.points, atol=1e-15
        )

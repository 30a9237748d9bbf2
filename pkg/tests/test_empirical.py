import math

import numpy as np
import pytest

import oracles
from qratio import DegenerateSampleError, DomainError
from qratio.distributions import DistributionSpec
from qratio.empirical import (
    BandwidthRule,
    DEFAULT_BANDWIDTH,
    epanechnikov,
    kernel_quantile_density,
    pb_median_log_variance,
    sample_quantile,
    select_bandwidth,
    shoemaker_density_quantile,
    standardized_fourth_moment,
)


class TestSampleQuantile:
    def test_exact_median(self):
        assert sample_quantile([1, 2, 3, 4, 5], 0.5) == 3.0

    def test_interpolated_median(self):
        assert sample_quantile([1, 2, 3, 4], 0.5) == 2.5

    def test_interpolated_lower_quartile(self):
        assert sample_quantile([10, 20], 0.25) == 12.5

    def test_endpoints_are_min_max(self):
        data = [5.0, -2.0, 7.5, 1.0]
        assert sample_quantile(data, 0.0) == -2.0
        assert sample_quantile(data, 1.0) == 7.5

    def test_empty_sample_errors(self):
        with pytest.raises(DegenerateSampleError):
            sample_quantile([], 0.5)

    def test_matches_reference_formula(self):
        rng = np.random.default_rng(1)
        data = rng.normal(size=37)
        for p in np.linspace(0.0, 1.0, 23):
            assert sample_quantile(data, p) == pytest.approx(
                oracles.quantile_type7(data, p), abs=1e-12
            )

    def test_monotone_and_equivariant(self):
        rng = np.random.default_rng(2)
        data = rng.exponential(size=40)
        ps = np.linspace(0.01, 0.99, 50)
        q = sample_quantile(data, ps)
        assert np.all(np.diff(q) >= 0)
        scaled = sample_quantile(2.5 * data + 3.0, ps)
        assert np.allclose(scaled, 2.5 * q + 3.0)

    def test_ties_are_kept(self):
        assert sample_quantile([1, 1, 1, 5], 0.5) == 1.0


class TestKernelQuantileDensity:
    def test_kernel_at_origin(self):
        assert epanechnikov(0.0) == 0.75
        for b in (0.1, 0.33):
            assert epanechnikov(0.0) / b == pytest.approx(0.75 / b)
        assert epanechnikov(1.5) == 0.0

    def test_uniform_grid_recovers_unit_density(self):
        n = 1000
        data = (np.arange(1, n + 1) - 0.5) / n
        assert kernel_quantile_density(data, 0.5, 0.1) == pytest.approx(1.0, abs=0.02)

    def test_matches_bruteforce_sum(self):
        rng = np.random.default_rng(3)
        data = rng.lognormal(size=60)
        for p in (0.1, 0.25, 0.5, 0.9):
            for b in (0.05, 0.21, 0.8):
                assert kernel_quantile_density(data, p, b) == pytest.approx(
                    oracles.kernel_qd_bruteforce(data, p, b), rel=1e-12
                )

    def test_consistent_for_exponential(self):
        d = DistributionSpec("exponential", (1.0,))
        data = d.sample(10**4, seed=11)
        b = select_bandwidth(DEFAULT_BANDWIDTH, data.size, 0.5)
        ghat = kernel_quantile_density(data, 0.5, b)
        assert abs(ghat - 2.0) / 2.0 < 0.10

    def test_location_invariance_and_scale_equivariance(self):
        rng = np.random.default_rng(4)
        data = rng.normal(size=80)
        p, b = 0.4, 0.2  # p +- b inside (0,1): weights sum to zero
        base = kernel_quantile_density(data, p, b)
        assert kernel_quantile_density(data + 37.0, p, b) == pytest.approx(base, abs=1e-9)
        assert kernel_quantile_density(3.0 * data, p, b) == pytest.approx(3.0 * base, rel=1e-12)

    def test_bad_bandwidth_errors(self):
        with pytest.raises(DomainError):
            kernel_quantile_density([1.0, 2.0], 0.5, 0.0)
        with pytest.raises(DomainError):
            kernel_quantile_density([1.0, 2.0], 0.5, -0.1)


class TestBandwidthSelection:
    def test_decreasing_in_n(self):
        for rule in (BandwidthRule.hall_sheather(), BandwidthRule.amse_normal_reference()):
            assert select_bandwidth(rule, 100, 0.3) > select_bandwidth(rule, 100_000, 0.3)

    def test_symmetric_in_p(self):
        for rule in (BandwidthRule.hall_sheather(), BandwidthRule.amse_normal_reference()):
            assert select_bandwidth(rule, 200, 0.2) == pytest.approx(
                select_bandwidth(rule, 200, 0.8), rel=1e-12
            )

    def test_hand_evaluation_at_median(self):
        # hall-sheather: n^(-1/3) z_.975^(2/3) (1.5 phi(0)^2)^(1/3)
        assert select_bandwidth(BandwidthRule.hall_sheather(), 100, 0.5) == pytest.approx(
            0.20931604694700326, rel=1e-10
        )
        # amse plug-in: (15 phi(0)^4 / 100)^(1/5)
        assert select_bandwidth(BandwidthRule.amse_normal_reference(), 100, 0.5) == pytest.approx(
            0.328054730400398, rel=1e-10
        )

    def test_rates(self):
        hs = BandwidthRule.hall_sheather()
        ratio = select_bandwidth(hs, 8000, 0.3) / select_bandwidth(hs, 1000, 0.3)
        assert ratio == pytest.approx(0.5, rel=1e-9)  # n^(-1/3)
        amse = BandwidthRule.amse_normal_reference()
        ratio = select_bandwidth(amse, 32000, 0.3) / select_bandwidth(amse, 1000, 0.3)
        assert ratio == pytest.approx(0.5, rel=1e-9)  # n^(-1/5)

    def test_fixed_rule_and_validation(self):
        assert select_bandwidth(BandwidthRule.fixed(0.07), 5000, 0.9) == 0.07
        with pytest.raises(DomainError):
            BandwidthRule.fixed(0.0)
        with pytest.raises(DomainError):
            BandwidthRule.fixed(1.0)
        with pytest.raises(DomainError):
            BandwidthRule(kind="nosuch")
        with pytest.raises(DomainError):
            select_bandwidth(BandwidthRule.hall_sheather(), 1, 0.5)

    def test_alpha_binding(self):
        hs = BandwidthRule.hall_sheather()
        wide = select_bandwidth(hs, 100, 0.5, alpha=0.01)
        base = select_bandwidth(hs, 100, 0.5, alpha=0.05)
        assert wide > base  # larger critical value, larger bandwidth
        pinned = BandwidthRule.hall_sheather(alpha=0.05)
        assert select_bandwidth(pinned, 100, 0.5, alpha=0.01) == pytest.approx(base)

    def test_stays_in_unit_interval(self):
        for n in (2, 10, 10**7):
            for p in (0.001, 0.5, 0.999):
                for rule in (BandwidthRule.hall_sheather(), BandwidthRule.amse_normal_reference()):
                    assert 0.0 < select_bandwidth(rule, n, p) < 1.0


class TestStandardizedFourthMoment:
    def test_two_point_sample(self):
        # all squared deviations equal: the sharp minimum ((n-1)/n)^2 = 9/16
        assert standardized_fourth_moment([-1.0, -1.0, 1.0, 1.0]) == pytest.approx(9 / 16)

    def test_constant_sample_errors(self):
        with pytest.raises(DegenerateSampleError):
            standardized_fourth_moment([2.0, 2.0, 2.0])

    def test_normal_sample_near_three(self):
        x = DistributionSpec("normal", (0.0, 1.0)).sample(10**6, seed=5)
        assert abs(standardized_fourth_moment(x) - 3.0) < 0.05

    def test_affine_invariance(self):
        rng = np.random.default_rng(6)
        x = rng.gamma(2.0, size=50)
        base = standardized_fourth_moment(x)
        assert standardized_fourth_moment(-3.0 * x + 11.0) == pytest.approx(base, rel=1e-12)

    def test_lower_bound(self):
        rng = np.random.default_rng(7)
        for n in (5, 17, 64):
            x = rng.normal(size=n)
            assert standardized_fourth_moment(x) >= ((n - 1) / n) ** 2 - 1e-12


class TestPbMedianLogVariance:
    def test_order_statistic_index(self):
        # n=25: c = round(13 - 5) = 8
        n = 25
        assert int(math.floor((n + 1) / 2 - math.sqrt(n) + 0.5)) == 8

    def test_binomial_tail_and_z(self):
        # frozen from exact rational arithmetic and mpmath
        p1 = oracles.binomial_tail_half(25, 7)
        assert p1 == pytest.approx(0.021642625331878662, rel=1e-12)
        assert oracles.mp_ndtri(1 - p1) == pytest.approx(2.02094701126, rel=1e-9)

    def test_matches_hand_chained_formula(self):
        x = DistributionSpec("lognormal", (0.0, 1.0)).sample(25, seed=8)
        n, c = 25, 8
        logs = np.sort(np.log(x))
        p1 = oracles.binomial_tail_half(n, c - 1)
        z = oracles.mp_ndtri(1 - p1)
        expect = ((logs[n - c] - logs[c - 1]) / (2 * z)) ** 2
        assert pb_median_log_variance(x) == pytest.approx(expect, rel=1e-9)

    def test_zero_when_bracketing_order_stats_coincide(self):
        x = np.ones(25)
        x[:3] = 0.5
        x[-3:] = 2.0
        assert pb_median_log_variance(x) == 0.0

    def test_scale_invariance(self):
        x = DistributionSpec("chi_squared", (5.0,)).sample(40, seed=9)
        assert pb_median_log_variance(17.0 * x) == pytest.approx(
            pb_median_log_variance(x), rel=1e-12
        )

    def test_preconditions(self):
        with pytest.raises(DomainError):
            pb_median_log_variance([1.0, -2.0, 3.0, 4.0, 5.0])
        with pytest.raises(DegenerateSampleError):
            pb_median_log_variance([1.0, 2.0, 3.0])


class TestShoemakerDensityQuantile:
    def test_default_bandwidth_value(self):
        # s = 1, n = 32 gives h = 1.3/2 = 0.65
        rng = np.random.default_rng(10)
        x = rng.normal(size=32)
        x = (x - x.mean()) / x.std(ddof=1)  # force s = 1 exactly
        q = shoemaker_density_quantile(x, 0.5)
        xp = sample_quantile(x, 0.5)
        h = 0.65
        count = np.count_nonzero((x >= xp - h) & (x <= xp + h))
        assert q == pytest.approx(count / (2 * 32 * h))

    def test_forced_window_count(self):
        data = [4.5, 5.0, 5.5, 7.0]
        # p = 1/3 puts the sample quantile exactly at 5.0; h = 1 counts 3 points
        assert sample_quantile(data, 1 / 3) == 5.0
        assert shoemaker_density_quantile(data, 1 / 3, bandwidth=1.0) == pytest.approx(0.375)

    def test_zero_when_all_data_outside_window(self):
        data = [0.0, 10.0, 20.0, 30.0]
        assert shoemaker_density_quantile(data, 0.5, bandwidth=1e-6) >= 0.0
        # quantile 15 +- 1e-6 contains no observation
        assert shoemaker_density_quantile(data, 0.5, bandwidth=1e-6) == 0.0

    def test_degenerate_sample_errors(self):
        with pytest.raises(DegenerateSampleError):
            shoemaker_density_quantile([3.0, 3.0, 3.0], 0.5)

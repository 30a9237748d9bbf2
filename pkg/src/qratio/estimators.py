"""scikit-learn style front end: estimator classes with ``get_params`` /
``set_params`` and a two-sample ``fit(x, y)`` that exposes the fitted
interval through trailing-underscore attributes, so the procedures compose
with the wider sklearn ecosystem (cloning, grid iteration, pipelines that
pass estimators around)."""
from __future__ import annotations

from sklearn.base import BaseEstimator

from . import intervals
from .empirical import DEFAULT_BANDWIDTH, BandwidthRule

__all__ = [
    "QuantileRatioCI",
    "SquaredIQRRatioCI",
    "IQRRatioCI",
    "VarianceRatioCI",
    "MedianRatioCI",
    "FVarianceRatioCI",
    "ShoemakerScaleTest",
]


class _TwoSampleIntervalEstimator(BaseEstimator):
    """Base for interval estimators: fit stores point_/lower_/upper_/interval_."""

    def _estimate(self, x, y) -> intervals.IntervalEstimate:
        raise NotImplementedError

    def fit(self, x, y):
        est = self._estimate(x, y)
        self.interval_ = est
        self.point_ = est.point
        self.lower_ = est.lower
        self.upper_ = est.upper
        return self


class QuantileRatioCI(_TwoSampleIntervalEstimator):
    """Interval for the ratio of p-th quantiles of two independent samples."""

    def __init__(self, p=0.5, alpha=0.05, bandwidth: BandwidthRule = DEFAULT_BANDWIDTH):
        self.p = p
        self.alpha = alpha
        self.bandwidth = bandwidth

    def _estimate(self, x, y):
        return intervals.ci_ratio_quantiles(x, y, p=self.p, alpha=self.alpha,
                                            bandwidth=self.bandwidth)


class SquaredIQRRatioCI(_TwoSampleIntervalEstimator):
    """Interval for the squared ratio of interquantile ranges."""

    def __init__(self, p=0.25, alpha=0.05, bandwidth: BandwidthRule = DEFAULT_BANDWIDTH):
        self.p = p
        self.alpha = alpha
        self.bandwidth = bandwidth

    def _estimate(self, x, y):
        return intervals.ci_sq_iqr_ratio(x, y, p=self.p, alpha=self.alpha,
                                         bandwidth=self.bandwidth)


class IQRRatioCI(_TwoSampleIntervalEstimator):
    """Interval for the plain ratio of interquantile ranges."""

    def __init__(self, p=0.25, alpha=0.05, bandwidth: BandwidthRule = DEFAULT_BANDWIDTH):
        self.p = p
        self.alpha = alpha
        self.bandwidth = bandwidth

    def _estimate(self, x, y):
        return intervals.ci_iqr_ratio(x, y, p=self.p, alpha=self.alpha,
                                      bandwidth=self.bandwidth)


class VarianceRatioCI(_TwoSampleIntervalEstimator):
    """Kurtosis-adjusted asymptotic interval for the ratio of variances."""

    def __init__(self, alpha=0.05):
        self.alpha = alpha

    def _estimate(self, x, y):
        return intervals.ci_ratio_variances(x, y, alpha=self.alpha)


class MedianRatioCI(_TwoSampleIntervalEstimator):
    """Distribution-free interval for the ratio of medians (positive data)."""

    def __init__(self, alpha=0.05):
        self.alpha = alpha

    def _estimate(self, x, y):
        return intervals.ci_median_ratio_pb(x, y, alpha=self.alpha)


class FVarianceRatioCI(_TwoSampleIntervalEstimator):
    """Classical normal-theory F interval for the ratio of variances."""

    def __init__(self, alpha=0.05):
        self.alpha = alpha

    def _estimate(self, x, y):
        return intervals.ci_f_interval(x, y, alpha=self.alpha)


class ShoemakerScaleTest(BaseEstimator):
    """Two-sided Z test of equal p-interquantile ranges; fit stores
    statistic_ and p_value_."""

    def __init__(self, p=0.25):
        self.p = p

    def fit(self, x, y):
        res = intervals.shoemaker_test(x, y, p=self.p)
        self.result_ = res
        self.statistic_ = res.statistic
        self.p_value_ = res.p_value
        return self

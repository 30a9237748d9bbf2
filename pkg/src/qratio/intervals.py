"""The inferential procedures: log-scale asymptotic intervals for the ratio
of quantiles, the squared (and plain) ratio of interquantile ranges and the
ratio of variances, the distribution-free median-ratio interval, the
normal-theory F interval, and the two-sample interquantile-range Z test."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special

from ._validation import (
    DegenerateSampleError,
    DomainError,
    check_alpha,
    check_probability,
    check_sample,
)
from .empirical import (
    DEFAULT_BANDWIDTH,
    BandwidthRule,
    kernel_quantile_density,
    pb_median_log_variance,
    sample_quantile,
    select_bandwidth,
    shoemaker_density_quantile,
    standardized_fourth_moment,
)

__all__ = [
    "IntervalEstimate",
    "TestResult",
    "ci_ratio_quantiles",
    "ci_sq_iqr_ratio",
    "ci_iqr_ratio",
    "ci_ratio_variances",
    "ci_median_ratio_pb",
    "ci_f_interval",
    "shoemaker_test",
]


@dataclass(frozen=True)
class IntervalEstimate:
    """A point estimate with a two-sided confidence interval."""

    method: str
    point: float
    lower: float
    upper: float
    alpha: float
    p: float | None = None

    def contains(self, value: float) -> bool:
        return self.lower <= value <= self.upper

    @property
    def width(self) -> float:
        return self.upper - self.lower

    def to_dict(self) -> dict:
        return {
            "method": self.method,
            "p": self.p,
            "alpha": self.alpha,
            "point": self.point,
            "lower": self.lower,
            "upper": self.upper,
        }


@dataclass(frozen=True)
class TestResult:
    """A two-sided asymptotically normal test."""

    statistic: float
    p_value: float
    p: float

    def to_dict(self) -> dict:
        return {"statistic": self.statistic, "p_value": self.p_value, "p": self.p}


def _z_crit(alpha: float) -> float:
    return float(special.ndtri(1.0 - alpha / 2.0))


def _log_interval(method: str, point: float, variance: float, alpha: float,
                  p: float | None = None) -> IntervalEstimate:
    """exp[ln(point) +- z sqrt(variance)/point]; multiplicatively symmetric."""
    if not (np.isfinite(variance) and variance > 0.0):
        raise DegenerateSampleError(f"{method}: degenerate variance estimate ({variance!r})")
    half = _z_crit(alpha) * math.sqrt(variance) / point
    return IntervalEstimate(
        method=method,
        point=point,
        lower=point * math.exp(-half),
        upper=point * math.exp(half),
        alpha=alpha,
        p=p,
    )


def ci_ratio_quantiles(x, y, p: float = 0.5, alpha: float = 0.05,
                       bandwidth: BandwidthRule = DEFAULT_BANDWIDTH) -> IntervalEstimate:
    """Interval for the ratio of p-th quantiles Q_X(p)/Q_Y(p).

    The variance plugs kernel quantile-density estimates into

        Var = p(1-p) r^2 / (n1+n2) [ g1^2/(w1 xhat^2) + g2^2/(w2 yhat^2) ]

    and the interval is the exponentiated log-scale one.
    """
    xs = check_sample(x, min_size=2, name="x")
    ys = check_sample(y, min_size=2, name="y")
    p = check_probability(p)
    alpha = check_alpha(alpha)
    n1, n2 = xs.size, ys.size
    w1 = n1 / (n1 + n2)
    w2 = 1.0 - w1
    xhat = sample_quantile(xs, p)
    yhat = sample_quantile(ys, p)
    if yhat == 0.0:
        raise DomainError("ratio of quantiles undefined: denominator sample quantile is zero")
    ratio = xhat / yhat
    if ratio <= 0.0:
        raise DomainError(
            "ratio of quantiles is not positive (mixed-sign sample quantiles); "
            "log-scale interval undefined"
        )
    g1 = kernel_quantile_density(xs, p, select_bandwidth(bandwidth, n1, p, alpha))
    g2 = kernel_quantile_density(ys, p, select_bandwidth(bandwidth, n2, p, alpha))
    var = (p * (1.0 - p) * ratio**2 / (n1 + n2)) * (
        g1**2 / (w1 * xhat**2) + g2**2 / (w2 * yhat**2)
    )
    return _log_interval("ratio_quantiles", ratio, var, alpha, p)


def _sq_iqr_pieces(xs, ys, p, alpha, bandwidth):
    n1, n2 = xs.size, ys.size
    w1 = n1 / (n1 + n2)
    w2 = 1.0 - w1
    iqr1 = sample_quantile(xs, 1.0 - p) - sample_quantile(xs, p)
    iqr2 = sample_quantile(ys, 1.0 - p) - sample_quantile(ys, p)
    if iqr1 <= 0.0 or iqr2 <= 0.0:
        raise DegenerateSampleError("a sample interquantile range is zero")
    big_r = (iqr1 / iqr2) ** 2

    def bracket(s, n):
        g_p = kernel_quantile_density(s, p, select_bandwidth(bandwidth, n, p, alpha))
        g_q = kernel_quantile_density(s, 1.0 - p, select_bandwidth(bandwidth, n, 1.0 - p, alpha))
        return g_p**2 + g_q**2 - p * (g_p + g_q) ** 2

    var = (4.0 * p * big_r**2 / (n1 + n2)) * (
        bracket(xs, n1) / (w1 * iqr1**2) + bracket(ys, n2) / (w2 * iqr2**2)
    )
    return big_r, var


def ci_sq_iqr_ratio(x, y, p: float = 0.25, alpha: float = 0.05,
                    bandwidth: BandwidthRule = DEFAULT_BANDWIDTH) -> IntervalEstimate:
    """Interval for the squared ratio of interquantile ranges
    [IQR_p(X)/IQR_p(Y)]^2, p in (0, 0.5)."""
    xs = check_sample(x, min_size=2, name="x")
    ys = check_sample(y, min_size=2, name="y")
    p = check_probability(p, upper=0.5)
    alpha = check_alpha(alpha)
    big_r, var = _sq_iqr_pieces(xs, ys, p, alpha, bandwidth)
    return _log_interval("sq_iqr_ratio", big_r, var, alpha, p)


def ci_iqr_ratio(x, y, p: float = 0.25, alpha: float = 0.05,
                 bandwidth: BandwidthRule = DEFAULT_BANDWIDTH) -> IntervalEstimate:
    """Interval for the plain ratio IQR_p(X)/IQR_p(Y): the elementwise square
    root of the squared-ratio interval."""
    sq = ci_sq_iqr_ratio(x, y, p=p, alpha=alpha, bandwidth=bandwidth)
    return IntervalEstimate(
        method="iqr_ratio",
        point=math.sqrt(sq.point),
        lower=math.sqrt(sq.lower),
        upper=math.sqrt(sq.upper),
        alpha=sq.alpha,
        p=sq.p,
    )


def ci_ratio_variances(x, y, alpha: float = 0.05) -> IntervalEstimate:
    """Interval for the ratio of variances S1^2/S2^2 using standardized
    fourth moments:

        Var = rho^2/(n1+n2) [ (Z1bar4 - 1)/w1 + (Z2bar4 - 1)/w2 ].
    """
    xs = check_sample(x, min_size=2, name="x")
    ys = check_sample(y, min_size=2, name="y")
    alpha = check_alpha(alpha)
    n1, n2 = xs.size, ys.size
    w1 = n1 / (n1 + n2)
    s1 = float(np.var(xs, ddof=1))
    s2 = float(np.var(ys, ddof=1))
    if s1 <= 0.0 or s2 <= 0.0:
        raise DegenerateSampleError("a sample variance is zero")
    rho = s1 / s2
    k1 = standardized_fourth_moment(xs)
    k2 = standardized_fourth_moment(ys)
    var = (rho**2 / (n1 + n2)) * ((k1 - 1.0) / w1 + (k2 - 1.0) / (1.0 - w1))
    return _log_interval("ratio_variances", rho, var, alpha)


def ci_median_ratio_pb(x, y, alpha: float = 0.05) -> IntervalEstimate:
    """Distribution-free interval for the ratio of medians of two strictly
    positive samples:

        (m1/m2) exp{ +- z_{1-a/2} sqrt(V1 + V2) }

    with Vj the order-statistic variance of the log-sample median."""
    xs = check_sample(x, min_size=5, positive=True, name="x")
    ys = check_sample(y, min_size=5, positive=True, name="y")
    alpha = check_alpha(alpha)
    v1 = pb_median_log_variance(xs)
    v2 = pb_median_log_variance(ys)
    point = sample_quantile(xs, 0.5) / sample_quantile(ys, 0.5)
    half = _z_crit(alpha) * math.sqrt(v1 + v2)
    return IntervalEstimate(
        method="pb_median_ratio",
        point=point,
        lower=point * math.exp(-half),
        upper=point * math.exp(half),
        alpha=alpha,
    )


def f_quantile(q: float, df1: int, df2: int) -> float:
    """Quantile of the F distribution via the inverse regularized incomplete beta."""
    return float(special.fdtri(df1, df2, q))


def ci_f_interval(x, y, alpha: float = 0.05) -> IntervalEstimate:
    """Classical normal-theory interval for the ratio of variances:
    (S1^2/S2^2) / F_{1-a/2} <= rho <= (S1^2/S2^2) / F_{a/2}."""
    xs = check_sample(x, min_size=2, name="x")
    ys = check_sample(y, min_size=2, name="y")
    alpha = check_alpha(alpha)
    s1 = float(np.var(xs, ddof=1))
    s2 = float(np.var(ys, ddof=1))
    if s1 <= 0.0 or s2 <= 0.0:
        raise DegenerateSampleError("a sample variance is zero")
    rho = s1 / s2
    df1, df2 = xs.size - 1, ys.size - 1
    return IntervalEstimate(
        method="f_interval",
        point=rho,
        lower=rho / f_quantile(1.0 - alpha / 2.0, df1, df2),
        upper=rho / f_quantile(alpha / 2.0, df1, df2),
        alpha=alpha,
    )


def shoemaker_test(x, y, p: float = 0.25) -> TestResult:
    """Two-sided Z test of equal interquantile ranges IQR_p(X) = IQR_p(Y),

        Z = [IQRhat_p(X) - IQRhat_p(Y)] / sqrt(w1hat^2/n1 + w2hat^2/n2),

    with each asymptotic variance estimated by plugging histogram
    density-quantile estimates into
    p { q_p^2 + q_(1-p)^2 - p (q_p + q_(1-p))^2 } / (q_p^2 q_(1-p)^2).
    """
    xs = check_sample(x, min_size=2, name="x")
    ys = check_sample(y, min_size=2, name="y")
    p = check_probability(p, upper=0.5)

    def omega2(s):
        q_p = shoemaker_density_quantile(s, p)
        q_q = shoemaker_density_quantile(s, 1.0 - p)
        if q_p <= 0.0 or q_q <= 0.0:
            raise DegenerateSampleError(
                "estimated density is zero at a required quantile; test variance undefined"
            )
        return p * (q_p**2 + q_q**2 - p * (q_p + q_q) ** 2) / (q_p**2 * q_q**2)

    denom = omega2(xs) / xs.size + omega2(ys) / ys.size
    if denom <= 0.0:
        raise DegenerateSampleError("nonpositive variance estimate; test undefined")
    iqr1 = sample_quantile(xs, 1.0 - p) - sample_quantile(xs, p)
    iqr2 = sample_quantile(ys, 1.0 - p) - sample_quantile(ys, p)
    z = (iqr1 - iqr2) / math.sqrt(denom)
    return TestResult(statistic=z, p_value=float(2.0 * special.ndtr(-abs(z))), p=p)

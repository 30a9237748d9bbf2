"""Sample-based building blocks: continuous (type-7) sample quantiles, the
Epanechnikov kernel quantile-density estimator with pluggable bandwidth
selection, standardized fourth moments, the order-statistic variance of a
log-sample median, and the histogram density estimate used by the
interquantile-range Z test."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special

from ._validation import (
    DegenerateSampleError,
    DomainError,
    check_probability,
    check_sample,
)

__all__ = [
    "sample_quantile",
    "epanechnikov",
    "kernel_quantile_density",
    "BandwidthRule",
    "DEFAULT_BANDWIDTH",
    "select_bandwidth",
    "standardized_fourth_moment",
    "pb_median_log_variance",
    "shoemaker_density_quantile",
]

_SQRT2PI = math.sqrt(2.0 * math.pi)


def sample_quantile(x, p):
    """Continuous sample quantile with linear interpolation of order
    statistics at h = (n-1)p + 1 (R/numpy default, a.k.a. type 7)."""
    xs = check_sample(x, min_size=1)
    p = np.asarray(p, dtype=float)
    if np.any((p < 0.0) | (p > 1.0)):
        raise DomainError("quantile level must be in [0, 1]")
    out = np.quantile(xs, p, method="linear")
    return float(out) if np.ndim(out) == 0 else out


def epanechnikov(u):
    """k(u) = 0.75 (1 - u^2) on [-1, 1]."""
    u = np.asarray(u, dtype=float)
    return np.where(np.abs(u) <= 1.0, 0.75 * (1.0 - u * u), 0.0)


def kernel_quantile_density(x, p, bandwidth) -> float:
    """Kernel estimate of the quantile density g(p) from one sample:

        ghat(p, b) = sum_i X_(i) [k_b(p - (i-1)/n) - k_b(p - i/n)]

    with the Epanechnikov kernel, k_b(u) = k(u/b)/b.  The sum is evaluated
    verbatim; no boundary correction is applied when p +- b leaves [0, 1].
    """
    xs = check_sample(x, min_size=2)
    p = check_probability(p)
    b = float(bandwidth)
    if b <= 0.0:
        raise DomainError(f"bandwidth must be positive, got {b!r}")
    n = xs.size
    grid = np.arange(0, n + 1) / n
    kb = epanechnikov((p - grid) / b) / b
    return float(np.dot(xs, kb[:-1] - kb[1:]))


@dataclass(frozen=True)
class BandwidthRule:
    """Bandwidth selector for the kernel quantile-density estimator.

    kinds:
      * ``hall_sheather`` (default): n^(-1/3) coverage-oriented rule for
        Studentized quantile intervals, normal reference,
        b = n^(-1/3) z_{1-a/2}^(2/3) [1.5 phi^2(z_p) / (2 z_p^2 + 1)]^(1/3).
      * ``amse_normal_reference``: n^(-1/5) AMSE-optimal plug-in for ghat
        itself, b = [15 phi^4(z_p) / (n (1 + 2 z_p^2)^2)]^(1/5).
      * ``fixed``: a constant bandwidth.
    """

    kind: str = "hall_sheather"
    bandwidth: float | None = None
    alpha: float | None = None

    def __post_init__(self):
        if self.kind not in ("hall_sheather", "amse_normal_reference", "fixed"):
            raise DomainError(f"unknown bandwidth rule {self.kind!r}")
        if self.kind == "fixed":
            if self.bandwidth is None or not 0.0 < float(self.bandwidth) < 1.0:
                raise DomainError("fixed bandwidth must lie in (0, 1)")

    @classmethod
    def hall_sheather(cls, alpha: float | None = None) -> "BandwidthRule":
        return cls(kind="hall_sheather", alpha=alpha)

    @classmethod
    def amse_normal_reference(cls) -> "BandwidthRule":
        return cls(kind="amse_normal_reference")

    @classmethod
    def fixed(cls, bandwidth: float) -> "BandwidthRule":
        return cls(kind="fixed", bandwidth=float(bandwidth))


DEFAULT_BANDWIDTH = BandwidthRule.hall_sheather()


def select_bandwidth(rule: BandwidthRule, n: int, p: float, alpha: float = 0.05) -> float:
    """Bandwidth in (0, 1) for estimating g(p) from n observations.

    ``alpha`` is the interval level the estimate feeds into; it only affects
    the ``hall_sheather`` rule and is overridden by ``rule.alpha`` if set.
    """
    if n < 2:
        raise DomainError(f"bandwidth selection needs n >= 2, got {n}")
    p = check_probability(p)
    if rule.kind == "fixed":
        return float(rule.bandwidth)
    z = special.ndtri(p)
    dens = math.exp(-0.5 * z * z) / _SQRT2PI
    if rule.kind == "hall_sheather":
        a = rule.alpha if rule.alpha is not None else alpha
        za = special.ndtri(1.0 - float(a) / 2.0)
        b = n ** (-1.0 / 3.0) * za ** (2.0 / 3.0) * (1.5 * dens**2 / (2.0 * z * z + 1.0)) ** (1.0 / 3.0)
    else:
        b = (15.0 * dens**4 / (n * (1.0 + 2.0 * z * z) ** 2)) ** 0.2
    return float(min(max(b, 1e-10), 1.0 - 1e-10))


def standardized_fourth_moment(x) -> float:
    """(1/n) sum ((x_i - mean)/S)^4 with S the usual (n-1 divisor) deviation.

    With this convention the sharp lower bound is ((n-1)/n)^2, attained when
    all squared deviations are equal.
    """
    xs = check_sample(x, min_size=2)
    s2 = float(np.var(xs, ddof=1))
    if s2 <= 0.0:
        raise DegenerateSampleError("sample variance is zero")
    z2 = np.square(xs - xs.mean()) / s2
    return float(np.mean(np.square(z2)))


def pb_median_log_variance(x) -> float:
    """Order-statistic variance estimate for the median of the log sample.

    Uses the binomially calibrated pair of order statistics: with
    c = round((n+1)/2 - sqrt(n)) and p1 = P(Bin(n, 1/2) <= c-1),

        Var = [(L_(n-c+1) - L_(c)) / (2 z)]^2,   z = ndtri(1 - p1),

    where L is the sorted log sample; z matches the exact two-sided
    coverage 1 - 2 p1 of the order-statistic interval for the median.
    """
    xs = check_sample(x, min_size=5, positive=True)
    n = xs.size
    c = int(math.floor((n + 1) / 2.0 - math.sqrt(n) + 0.5))
    if c < 1 or n - c + 1 > n:
        raise DegenerateSampleError(f"sample too small for order-statistic variance (n={n})")
    logs = np.log(xs)
    p1 = float(special.bdtr(c - 1, n, 0.5))
    z = float(special.ndtri(1.0 - p1))
    return float(((logs[n - c] - logs[c - 1]) / (2.0 * z)) ** 2)


def shoemaker_density_quantile(x, p, bandwidth: float | None = None) -> float:
    """Histogram estimate of the density quantile q(p) = f(Q(p)):
    the fraction of observations within ``bandwidth`` of the sample p-quantile,
    divided by the window width.  Default bandwidth: 1.3 s / n^(1/5)."""
    xs = check_sample(x, min_size=2)
    p = check_probability(p)
    n = xs.size
    if bandwidth is None:
        s = float(np.std(xs, ddof=1))
        if s <= 0.0:
            raise DegenerateSampleError("sample standard deviation is zero")
        bandwidth = 1.3 * s / n**0.2
    h = float(bandwidth)
    if h <= 0.0:
        raise DomainError(f"bandwidth must be positive, got {h!r}")
    xp = sample_quantile(xs, p)
    count = int(np.count_nonzero((xs >= xp - h) & (xs <= xp + h)))
    return count / (2.0 * n * h)

"""Influence-function machinery: closed-form (partial) influence functions
for the two-sample ratio functionals, their asymptotic variances, and the
search for the interquantile level that minimizes the squared-IQR-ratio
asymptotic variance."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._validation import DomainError, check_count, check_probability
from .distributions import DistributionSpec

__all__ = [
    "TwoSampleDesign",
    "if_quantile",
    "pif_ratio_quantiles",
    "pif_sq_iqr_ratio",
    "pif_ratio_variances",
    "asv_ratio_quantiles",
    "asv_sq_iqr_ratio",
    "asv_ratio_variances",
    "shoemaker_asv",
    "OptimalP",
    "optimal_p",
]


@dataclass(frozen=True)
class TwoSampleDesign:
    """Two independent populations plus the sample-size split (n1, n2)."""

    dist1: DistributionSpec
    dist2: DistributionSpec
    n1: int = 1
    n2: int = 1

    def __post_init__(self):
        check_count(self.n1, "n1", minimum=1)
        check_count(self.n2, "n2", minimum=1)

    @property
    def w1(self) -> float:
        return self.n1 / (self.n1 + self.n2)

    @property
    def w2(self) -> float:
        return self.n2 / (self.n1 + self.n2)


def if_quantile(x0, p: float, dist: DistributionSpec):
    """Influence of a point mass at x0 on the p-th quantile:
    [p - I(Q(p) >= x0)] g(p).  Piecewise constant in x0 with a single jump
    of height g(p) at x0 = Q(p)."""
    p = check_probability(p)
    xp = dist.quantile(p)
    g = dist.quantile_density(p)
    x0 = np.asarray(x0, dtype=float)
    out = (p - (xp >= x0)) * g
    return float(out) if np.ndim(out) == 0 else out


def _which(which: int) -> int:
    if which not in (1, 2):
        raise DomainError(f"which must be 1 or 2, got {which!r}")
    return which


def pif_ratio_quantiles(which: int, x0, p: float, design: TwoSampleDesign):
    """Partial influence of contamination in sample ``which`` on the ratio
    of p-th quantiles Q1(p)/Q2(p)."""
    p = check_probability(p)
    yp = float(design.dist2.quantile(p))
    xp = float(design.dist1.quantile(p))
    if yp == 0.0 or xp == 0.0:
        raise DomainError("ratio of quantiles undefined: a quantile is zero")
    if _which(which) == 1:
        return if_quantile(x0, p, design.dist1) / yp
    r = xp / yp
    return -r * if_quantile(x0, p, design.dist2) / yp


def _iqr(dist: DistributionSpec, p: float) -> float:
    return float(dist.quantile(1.0 - p) - dist.quantile(p))


def pif_sq_iqr_ratio(which: int, x0, p: float, design: TwoSampleDesign):
    """Partial influence of contamination in sample ``which`` on the squared
    ratio of interquantile ranges [IQR_p(X)/IQR_p(Y)]^2."""
    p = check_probability(p, upper=0.5)
    iqr1, iqr2 = _iqr(design.dist1, p), _iqr(design.dist2, p)
    if iqr1 <= 0.0 or iqr2 <= 0.0:
        raise DomainError("squared IQR ratio undefined: an interquantile range is zero")
    big_r = (iqr1 / iqr2) ** 2
    if _which(which) == 1:
        diff = if_quantile(x0, 1.0 - p, design.dist1) - if_quantile(x0, p, design.dist1)
        return 2.0 * big_r * diff / iqr1
    diff = if_quantile(x0, 1.0 - p, design.dist2) - if_quantile(x0, p, design.dist2)
    return -2.0 * big_r * diff / iqr2


def pif_ratio_variances(which: int, x0, design: TwoSampleDesign):
    """Partial influence on the ratio of variances: rho (z^2 - 1) for the
    numerator sample and -rho (z^2 - 1) for the denominator, where z
    standardizes x0 by the contaminated population.  Unbounded in x0."""
    rho = design.dist1.variance() / design.dist2.variance()
    dist = design.dist1 if _which(which) == 1 else design.dist2
    z = (np.asarray(x0, dtype=float) - dist.mean()) / dist.std()
    out = rho * (z * z - 1.0)
    if which == 2:
        out = -out
    return float(out) if np.ndim(out) == 0 else out


def asv_ratio_quantiles(design: TwoSampleDesign, p: float) -> float:
    """Asymptotic variance of sqrt(n1+n2) times the quantile-ratio estimator:

        p(1-p) r_p^2 { g1^2(p)/(w1 x_p^2) + g2^2(p)/(w2 y_p^2) }.
    """
    p = check_probability(p)
    xp = float(design.dist1.quantile(p))
    yp = float(design.dist2.quantile(p))
    if xp == 0.0 or yp == 0.0:
        raise DomainError("ratio of quantiles undefined: a quantile is zero")
    g1 = float(design.dist1.quantile_density(p))
    g2 = float(design.dist2.quantile_density(p))
    r = xp / yp
    return p * (1.0 - p) * r * r * (g1 * g1 / (design.w1 * xp * xp) + g2 * g2 / (design.w2 * yp * yp))


def _iqr_bracket(g_p: float, g_q: float, p: float) -> float:
    # g^2(p) + g^2(1-p) - p [g(p) + g(1-p)]^2
    return g_p * g_p + g_q * g_q - p * (g_p + g_q) ** 2


def asv_sq_iqr_ratio(design: TwoSampleDesign, p: float) -> float:
    """Asymptotic variance of sqrt(n1+n2) times the squared-IQR-ratio
    estimator:

        4 p R_p^2 { B1/(w1 IQR1^2) + B2/(w2 IQR2^2) },
        Bi = gi^2(p) + gi^2(1-p) - p [gi(p) + gi(1-p)]^2.
    """
    p = check_probability(p, upper=0.5)
    iqr1, iqr2 = _iqr(design.dist1, p), _iqr(design.dist2, p)
    if iqr1 <= 0.0 or iqr2 <= 0.0:
        raise DomainError("squared IQR ratio undefined: an interquantile range is zero")
    big_r = (iqr1 / iqr2) ** 2
    b1 = _iqr_bracket(float(design.dist1.quantile_density(p)),
                      float(design.dist1.quantile_density(1.0 - p)), p)
    b2 = _iqr_bracket(float(design.dist2.quantile_density(p)),
                      float(design.dist2.quantile_density(1.0 - p)), p)
    return 4.0 * p * big_r**2 * (b1 / (design.w1 * iqr1**2) + b2 / (design.w2 * iqr2**2))


def asv_ratio_variances(design: TwoSampleDesign) -> float:
    """Asymptotic variance of sqrt(n1+n2) times the variance-ratio estimator:

        rho^2 { (E Z1^4 - 1)/w1 + (E Z2^4 - 1)/w2 }.
    """
    rho = design.dist1.variance() / design.dist2.variance()
    k1 = design.dist1.fourth_standardized_moment()
    k2 = design.dist2.fourth_standardized_moment()
    return rho * rho * ((k1 - 1.0) / design.w1 + (k2 - 1.0) / design.w2)


def shoemaker_asv(dist: DistributionSpec, p: float) -> float:
    """One-sample asymptotic variance of sqrt(n) (IQRhat_p - IQR_p):

        p { q_p^2 + q_(1-p)^2 - p (q_p + q_(1-p))^2 } / (q_p^2 q_(1-p)^2)

    in density-quantile form, identically p(1-p)(g_p^2 + g_q^2) - 2 p^2 g_p g_q.
    """
    p = check_probability(p, upper=0.5)
    g_p = float(dist.quantile_density(p))
    g_q = float(dist.quantile_density(1.0 - p))
    return p * _iqr_bracket(g_p, g_q, p)


@dataclass(frozen=True)
class OptimalP:
    """Result of the scale-free minimization of the squared-IQR-ratio ASV."""

    p: float
    boundary: bool
    asv: float


def _one_family_objective(dist: DistributionSpec, p):
    """Equal-weight same-family ASV profile in p (constant factors dropped
    are irrelevant to the argmin; location/scale cancel)."""
    p = np.asarray(p, dtype=float)
    g_p = np.asarray(dist.quantile_density(p), dtype=float)
    g_q = np.asarray(dist.quantile_density(1.0 - p), dtype=float)
    iqr = np.asarray(dist.quantile(1.0 - p) - dist.quantile(p), dtype=float)
    bracket = g_p**2 + g_q**2 - p * (g_p + g_q) ** 2
    return 4.0 * p * bracket / (0.25 * iqr**2)


def optimal_p(dist: DistributionSpec, grid_step: float = 0.001) -> OptimalP:
    """Level p in (0, 0.5) minimizing the squared-IQR-ratio ASV for a design
    with both samples from ``dist`` and equal weights.

    Grid search over [0.005, 0.495] at ``grid_step`` followed by
    golden-section refinement to 1e-4.  When the minimum sits at the grid
    edge the smallest grid point is returned with ``boundary=True``.
    """
    if not 0.0 < grid_step < 0.25:
        raise DomainError(f"grid_step must be in (0, 0.25), got {grid_step!r}")
    grid = np.arange(0.005, 0.495 + grid_step / 2.0, grid_step)
    vals = _one_family_objective(dist, grid)
    idx = int(np.argmin(vals))
    if idx == 0 or idx == grid.size - 1:
        return OptimalP(p=float(grid[idx]), boundary=True, asv=float(vals[idx]))
    lo, hi = float(grid[idx - 1]), float(grid[idx + 1])
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    c = hi - inv_phi * (hi - lo)
    d = lo + inv_phi * (hi - lo)
    fc = float(_one_family_objective(dist, c))
    fd = float(_one_family_objective(dist, d))
    while hi - lo > 1e-4:
        if fc < fd:
            hi, d, fd = d, c, fc
            c = hi - inv_phi * (hi - lo)
            fc = float(_one_family_objective(dist, c))
        else:
            lo, c, fc = c, d, fd
            d = lo + inv_phi * (hi - lo)
            fd = float(_one_family_objective(dist, d))
    best = 0.5 * (lo + hi)
    return OptimalP(p=float(best), boundary=False, asv=float(_one_family_objective(dist, best)))

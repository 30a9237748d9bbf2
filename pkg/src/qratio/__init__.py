"""qratio: scale and location-ratio inference for two independent samples.

Point and interval estimates for ratios of quantiles, squared ratios of
interquantile ranges and ratios of variances, baseline methods (median-ratio
interval, F interval, interquantile-range Z test), the influence-function
asymptotics behind them, and a deterministic Monte Carlo engine for coverage
and width studies.
"""
from ._validation import (
    DegenerateSampleError,
    DomainError,
    MomentError,
    QRatioError,
    SingularDensityError,
)
from .asymptotics import (
    OptimalP,
    TwoSampleDesign,
    asv_ratio_quantiles,
    asv_ratio_variances,
    asv_sq_iqr_ratio,
    if_quantile,
    optimal_p,
    pif_ratio_quantiles,
    pif_ratio_variances,
    pif_sq_iqr_ratio,
    shoemaker_asv,
)
from .distributions import DistributionSpec, parse_distribution
from .empirical import (
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
from .estimators import (
    FVarianceRatioCI,
    IQRRatioCI,
    MedianRatioCI,
    QuantileRatioCI,
    ShoemakerScaleTest,
    SquaredIQRRatioCI,
    VarianceRatioCI,
)
from .intervals import (
    IntervalEstimate,
    TestResult,
    ci_f_interval,
    ci_iqr_ratio,
    ci_median_ratio_pb,
    ci_ratio_quantiles,
    ci_ratio_variances,
    ci_sq_iqr_ratio,
    shoemaker_test,
)
from .simulation import (
    MethodSpec,
    SimCellResult,
    SimConfig,
    parse_config,
    results_to_csv,
    results_to_rows,
    run_cell,
    run_table,
    true_value,
)

__version__ = "0.1.0"

__all__ = [
    "BandwidthRule",
    "DEFAULT_BANDWIDTH",
    "DegenerateSampleError",
    "DistributionSpec",
    "DomainError",
    "FVarianceRatioCI",
    "IQRRatioCI",
    "IntervalEstimate",
    "MedianRatioCI",
    "MethodSpec",
    "MomentError",
    "OptimalP",
    "QRatioError",
    "QuantileRatioCI",
    "ShoemakerScaleTest",
    "SimCellResult",
    "SimConfig",
    "SingularDensityError",
    "SquaredIQRRatioCI",
    "TestResult",
    "TwoSampleDesign",
    "VarianceRatioCI",
    "asv_ratio_quantiles",
    "asv_ratio_variances",
    "asv_sq_iqr_ratio",
    "ci_f_interval",
    "ci_iqr_ratio",
    "ci_median_ratio_pb",
    "ci_ratio_quantiles",
    "ci_ratio_variances",
    "ci_sq_iqr_ratio",
    "epanechnikov",
    "if_quantile",
    "kernel_quantile_density",
    "optimal_p",
    "parse_config",
    "parse_distribution",
    "pb_median_log_variance",
    "pif_ratio_quantiles",
    "pif_ratio_variances",
    "pif_sq_iqr_ratio",
    "results_to_csv",
    "results_to_rows",
    "run_cell",
    "run_table",
    "sample_quantile",
    "select_bandwidth",
    "shoemaker_asv",
    "shoemaker_density_quantile",
    "shoemaker_test",
    "standardized_fourth_moment",
    "true_value",
]

"""Shared input validation helpers and the package exception hierarchy."""
from __future__ import annotations

import numpy as np


class QRatioError(ValueError):
    """Base class for all estimation errors raised by this package."""


class DomainError(QRatioError):
    """An input violates a precondition (range, sign, shape)."""


class DegenerateSampleError(QRatioError):
    """A sample is too degenerate for the requested estimator
    (zero variance, zero interquantile range, too few observations)."""


class MomentError(QRatioError):
    """A required population moment does not exist for the distribution."""


class SingularDensityError(QRatioError):
    """The density is zero (or undefined) at a required quantile."""


def check_sample(x, *, min_size: int = 1, positive: bool = False, name: str = "sample") -> np.ndarray:
    """Coerce ``x`` to a sorted 1-D float array and validate it.

    Raises DomainError for non-numeric/non-finite input or (when
    ``positive=True``) non-positive values, and DegenerateSampleError when
    fewer than ``min_size`` observations are present.
    """
    try:
        arr = np.asarray(x, dtype=float)
    except (TypeError, ValueError) as exc:
        raise DomainError(f"{name} must be numeric") from exc
    arr = np.ravel(arr)
    if arr.size < min_size:
        raise DegenerateSampleError(
            f"{name} needs at least {min_size} observations, got {arr.size}"
        )
    if arr.size and not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} contains non-finite values")
    if positive and arr.size and arr.min() <= 0.0:
        raise DomainError(f"{name} must be strictly positive")
    return np.sort(arr)


def check_probability(p, *, name: str = "p", upper: float = 1.0) -> float:
    """Validate a probability in the open interval (0, upper)."""
    p = float(p)
    if not 0.0 < p < upper:
        raise DomainError(f"{name} must be in (0, {upper:g}), got {p!r}")
    return p


def check_alpha(alpha) -> float:
    alpha = float(alpha)
    if not 0.0 < alpha < 1.0:
        raise DomainError(f"alpha must be in (0, 1), got {alpha!r}")
    return alpha


def check_positive(value, name: str) -> float:
    value = float(value)
    if not value > 0.0 or not np.isfinite(value):
        raise DomainError(f"{name} must be a positive finite number, got {value!r}")
    return value


def check_count(value, name: str, minimum: int = 0) -> int:
    count = int(value)
    if count != value or count < minimum:
        raise DomainError(f"{name} must be an integer >= {minimum}, got {value!r}")
    return count

"""Parametric distribution registry: exact pdf/cdf/quantile/quantile-density,
population moments and seeded inverse-transform sampling.

Families are continuous and fully specified by a short parameter tuple.  All
quantile functions are exact (closed form, or scipy's dedicated inverses of
the regularized incomplete gamma/beta functions), so sampling is plain
inverse-transform on a counter-based generator and is bitwise reproducible
for a given seed.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass

import numpy as np
from scipy import special

from ._validation import (
    DomainError,
    MomentError,
    SingularDensityError,
    check_count,
    check_positive,
)

__all__ = [
    "DistributionSpec",
    "FAMILIES",
    "parse_distribution",
    "quantile",
    "quantile_density",
    "sample",
    "make_rng",
]

_SQRT2PI = math.sqrt(2.0 * math.pi)


def _phi(z):
    return np.exp(-0.5 * np.square(z)) / _SQRT2PI


def _as_prob(p, allow_closed=False):
    arr = np.asarray(p, dtype=float)
    lo_ok = arr >= 0.0 if allow_closed else arr > 0.0
    hi_ok = arr <= 1.0 if allow_closed else arr < 1.0
    if not np.all(lo_ok & hi_ok):
        bounds = "[0, 1]" if allow_closed else "(0, 1)"
        raise DomainError(f"probability must be in {bounds}")
    return arr


class _Family:
    """One parametric family; subclasses implement the math on validated params."""

    name: str = ""
    aliases: tuple[str, ...] = ()
    param_names: tuple[str, ...] = ()

    def validate(self, params: tuple[float, ...]) -> tuple[float, ...]:
        if len(params) != len(self.param_names):
            raise DomainError(
                f"{self.name} takes {len(self.param_names)} parameters "
                f"{self.param_names}, got {len(params)}"
            )
        return tuple(float(v) for v in params)

    def pdf(self, params, x):
        raise NotImplementedError

    def cdf(self, params, x):
        raise NotImplementedError

    def quantile(self, params, p):
        raise NotImplementedError

    def mean(self, params) -> float:
        raise MomentError(f"mean not implemented for {self.name}")

    def variance(self, params) -> float:
        raise MomentError(f"variance not implemented for {self.name}")

    def fourth_standardized_moment(self, params) -> float:
        """E[((X - mu)/sigma)^4]."""
        raise MomentError(f"fourth moment not implemented for {self.name}")


class _LogNormal(_Family):
    name = "lognormal"
    param_names = ("mu", "sigma")

    def validate(self, params):
        mu, sigma = super().validate(params)
        check_positive(sigma, "sigma")
        return mu, sigma

    def pdf(self, params, x):
        mu, sigma = params
        x = np.asarray(x, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore"):
            out = np.where(x > 0, _phi((np.log(np.where(x > 0, x, 1.0)) - mu) / sigma) / (x * sigma), 0.0)
        return out

    def cdf(self, params, x):
        mu, sigma = params
        x = np.asarray(x, dtype=float)
        return np.where(x > 0, special.ndtr((np.log(np.where(x > 0, x, 1.0)) - mu) / sigma), 0.0)

    def quantile(self, params, p):
        mu, sigma = params
        return np.exp(mu + sigma * special.ndtri(p))

    def mean(self, params):
        mu, sigma = params
        return math.exp(mu + 0.5 * sigma**2)

    def variance(self, params):
        mu, sigma = params
        return math.expm1(sigma**2) * math.exp(2 * mu + sigma**2)

    def fourth_standardized_moment(self, params):
        _, sigma = params
        w = math.exp(sigma**2)
        return w**4 + 2 * w**3 + 3 * w**2 - 3


class _Exponential(_Family):
    name = "exponential"
    aliases = ("exp",)
    param_names = ("rate",)

    def validate(self, params):
        (rate,) = super().validate(params)
        check_positive(rate, "rate")
        return (rate,)

    def pdf(self, params, x):
        (rate,) = params
        x = np.asarray(x, dtype=float)
        return np.where(x >= 0, rate * np.exp(-rate * np.where(x >= 0, x, 0.0)), 0.0)

    def cdf(self, params, x):
        (rate,) = params
        x = np.asarray(x, dtype=float)
        return np.where(x >= 0, -np.expm1(-rate * np.where(x >= 0, x, 0.0)), 0.0)

    def quantile(self, params, p):
        (rate,) = params
        return -np.log1p(-np.asarray(p, dtype=float)) / rate

    def mean(self, params):
        return 1.0 / params[0]

    def variance(self, params):
        return 1.0 / params[0] ** 2

    def fourth_standardized_moment(self, params):
        return 9.0


class _ChiSquared(_Family):
    name = "chi_squared"
    aliases = ("chisq",)
    param_names = ("df",)

    def validate(self, params):
        (df,) = super().validate(params)
        check_positive(df, "df")
        return (df,)

    def pdf(self, params, x):
        (df,) = params
        return _gamma_pdf(df / 2.0, 2.0, x)

    def cdf(self, params, x):
        (df,) = params
        x = np.asarray(x, dtype=float)
        return special.gammainc(df / 2.0, np.clip(x, 0.0, None) / 2.0)

    def quantile(self, params, p):
        (df,) = params
        return 2.0 * special.gammaincinv(df / 2.0, p)

    def mean(self, params):
        return params[0]

    def variance(self, params):
        return 2.0 * params[0]

    def fourth_standardized_moment(self, params):
        return 3.0 + 12.0 / params[0]


class _Pareto2(_Family):
    """Pareto type II (Lomax): F(x) = 1 - (1 + x/s)^(-a) for x >= 0."""

    name = "pareto2"
    param_names = ("scale", "shape")

    def validate(self, params):
        scale, shape = super().validate(params)
        check_positive(scale, "scale")
        check_positive(shape, "shape")
        return scale, shape

    def pdf(self, params, x):
        s, a = params
        x = np.asarray(x, dtype=float)
        return np.where(x >= 0, (a / s) * (1.0 + np.clip(x, 0.0, None) / s) ** (-a - 1.0), 0.0)

    def cdf(self, params, x):
        s, a = params
        x = np.asarray(x, dtype=float)
        return np.where(x >= 0, -np.expm1(-a * np.log1p(np.clip(x, 0.0, None) / s)), 0.0)

    def quantile(self, params, p):
        s, a = params
        return s * np.expm1(-np.log1p(-np.asarray(p, dtype=float)) / a)

    def mean(self, params):
        s, a = params
        if a <= 1:
            raise MomentError(f"pareto2 mean requires shape > 1, got {a:g}")
        return s / (a - 1.0)

    def variance(self, params):
        s, a = params
        if a <= 2:
            raise MomentError(f"pareto2 variance requires shape > 2, got {a:g}")
        return s**2 * a / ((a - 1.0) ** 2 * (a - 2.0))

    def fourth_standardized_moment(self, params):
        _, a = params
        if a <= 4:
            raise MomentError(f"pareto2 fourth moment requires shape > 4, got {a:g}")
        return 3.0 + 6.0 * (a**3 + a**2 - 6.0 * a - 2.0) / (a * (a - 3.0) * (a - 4.0))


class _Normal(_Family):
    name = "normal"
    param_names = ("mu", "sigma")

    def validate(self, params):
        mu, sigma = super().validate(params)
        check_positive(sigma, "sigma")
        return mu, sigma

    def pdf(self, params, x):
        mu, sigma = params
        return _phi((np.asarray(x, dtype=float) - mu) / sigma) / sigma

    def cdf(self, params, x):
        mu, sigma = params
        return special.ndtr((np.asarray(x, dtype=float) - mu) / sigma)

    def quantile(self, params, p):
        mu, sigma = params
        return mu + sigma * special.ndtri(p)

    def mean(self, params):
        return params[0]

    def variance(self, params):
        return params[1] ** 2

    def fourth_standardized_moment(self, params):
        return 3.0


class _Uniform(_Family):
    name = "uniform"
    param_names = ("a", "b")

    def validate(self, params):
        a, b = super().validate(params)
        if not a < b:
            raise DomainError(f"uniform requires a < b, got a={a:g}, b={b:g}")
        return a, b

    def pdf(self, params, x):
        a, b = params
        x = np.asarray(x, dtype=float)
        return np.where((x >= a) & (x <= b), 1.0 / (b - a), 0.0)

    def cdf(self, params, x):
        a, b = params
        return np.clip((np.asarray(x, dtype=float) - a) / (b - a), 0.0, 1.0)

    def quantile(self, params, p):
        a, b = params
        return a + (b - a) * np.asarray(p, dtype=float)

    def mean(self, params):
        a, b = params
        return 0.5 * (a + b)

    def variance(self, params):
        a, b = params
        return (b - a) ** 2 / 12.0

    def fourth_standardized_moment(self, params):
        return 1.8


class _Beta(_Family):
    name = "beta"
    param_names = ("alpha", "beta")

    def validate(self, params):
        a, b = super().validate(params)
        check_positive(a, "alpha")
        check_positive(b, "beta")
        return a, b

    def pdf(self, params, x):
        a, b = params
        x = np.asarray(x, dtype=float)
        inside = (x > 0) & (x < 1)
        xs = np.where(inside, x, 0.5)
        val = np.exp((a - 1) * np.log(xs) + (b - 1) * np.log1p(-xs) - special.betaln(a, b))
        out = np.where(inside, val, 0.0)
        # continuous limits on the closed support (quantiles can round onto
        # an endpoint): f(0+) and f(1-) are 0, 1/B, or +inf by shape
        norm = math.exp(-special.betaln(a, b))
        lim0 = math.inf if a < 1 else (norm if a == 1 else 0.0)
        lim1 = math.inf if b < 1 else (norm if b == 1 else 0.0)
        out = np.where(x == 0.0, lim0, out)
        out = np.where(x == 1.0, lim1, out)
        return out

    def cdf(self, params, x):
        a, b = params
        return special.betainc(a, b, np.clip(np.asarray(x, dtype=float), 0.0, 1.0))

    def quantile(self, params, p):
        a, b = params
        return special.betaincinv(a, b, p)

    def mean(self, params):
        a, b = params
        return a / (a + b)

    def variance(self, params):
        a, b = params
        return a * b / ((a + b) ** 2 * (a + b + 1.0))

    def fourth_standardized_moment(self, params):
        a, b = params
        num = 6.0 * ((a - b) ** 2 * (a + b + 1.0) - a * b * (a + b + 2.0))
        den = a * b * (a + b + 2.0) * (a + b + 3.0)
        return 3.0 + num / den


class _Gamma(_Family):
    """Unit-scale gamma; shape k."""

    name = "gamma"
    param_names = ("shape",)

    def validate(self, params):
        (k,) = super().validate(params)
        check_positive(k, "shape")
        return (k,)

    def pdf(self, params, x):
        (k,) = params
        return _gamma_pdf(k, 1.0, x)

    def cdf(self, params, x):
        (k,) = params
        return special.gammainc(k, np.clip(np.asarray(x, dtype=float), 0.0, None))

    def quantile(self, params, p):
        (k,) = params
        return special.gammaincinv(k, p)

    def mean(self, params):
        return params[0]

    def variance(self, params):
        return params[0]

    def fourth_standardized_moment(self, params):
        return 3.0 + 6.0 / params[0]


class _Weibull(_Family):
    """Unit-scale Weibull; shape k, F(x) = 1 - exp(-x^k)."""

    name = "weibull"
    param_names = ("shape",)

    def validate(self, params):
        (k,) = super().validate(params)
        check_positive(k, "shape")
        return (k,)

    def pdf(self, params, x):
        (k,) = params
        x = np.asarray(x, dtype=float)
        inside = x > 0
        xs = np.where(inside, x, 1.0)
        return np.where(inside, k * xs ** (k - 1.0) * np.exp(-(xs**k)), 0.0)

    def cdf(self, params, x):
        (k,) = params
        x = np.asarray(x, dtype=float)
        return np.where(x > 0, -np.expm1(-(np.clip(x, 0.0, None) ** k)), 0.0)

    def quantile(self, params, p):
        (k,) = params
        return (-np.log1p(-np.asarray(p, dtype=float))) ** (1.0 / k)

    def _raw_moments(self, k):
        return [math.gamma(1.0 + i / k) for i in (1, 2, 3, 4)]

    def mean(self, params):
        return self._raw_moments(params[0])[0]

    def variance(self, params):
        m1, m2, _, _ = self._raw_moments(params[0])
        return m2 - m1**2

    def fourth_standardized_moment(self, params):
        m1, m2, m3, m4 = self._raw_moments(params[0])
        var = m2 - m1**2
        mu4 = m4 - 4 * m3 * m1 + 6 * m2 * m1**2 - 3 * m1**4
        return mu4 / var**2


def _gamma_pdf(k, scale, x):
    x = np.asarray(x, dtype=float)
    inside = x > 0
    xs = np.where(inside, x, 1.0) / scale
    logpdf = (k - 1.0) * np.log(xs) - xs - special.gammaln(k) - math.log(scale)
    return np.where(inside, np.exp(logpdf), 0.0)


FAMILIES: dict[str, _Family] = {}
for _fam in (_LogNormal(), _Exponential(), _ChiSquared(), _Pareto2(), _Normal(),
             _Uniform(), _Beta(), _Gamma(), _Weibull()):
    FAMILIES[_fam.name] = _fam
    for _alias in _fam.aliases:
        FAMILIES[_alias] = _fam

# names used by the CLI/API grammar, e.g. "exp(1)" or "pareto2(1,3)"
_GRAMMAR_NAMES = {
    "lognormal": "lognormal",
    "exponential": "exp",
    "chi_squared": "chisq",
    "pareto2": "pareto2",
    "normal": "normal",
    "uniform": "uniform",
    "beta": "beta",
    "gamma": "gamma",
    "weibull": "weibull",
}


@dataclass(frozen=True)
class DistributionSpec:
    """A fully parameterized member of one of the supported families."""

    family: str
    params: tuple[float, ...]

    def __post_init__(self):
        fam = FAMILIES.get(self.family)
        if fam is None:
            raise DomainError(
                f"unknown family {self.family!r}; known: {sorted(_GRAMMAR_NAMES.values())}"
            )
        params = fam.validate(tuple(self.params))
        object.__setattr__(self, "family", fam.name)
        object.__setattr__(self, "params", params)

    @property
    def _fam(self) -> _Family:
        return FAMILIES[self.family]

    def pdf(self, x):
        return self._fam.pdf(self.params, x)

    def cdf(self, x):
        return self._fam.cdf(self.params, x)

    def quantile(self, p):
        return self._fam.quantile(self.params, _as_prob(p))

    def quantile_density(self, p):
        """g(p) = 1 / f(Q(p)), the derivative of the quantile function.

        An infinite density (possible at the support edge of beta shapes
        below one) maps to g = 0; a zero or undefined density raises.
        """
        dens = np.asarray(self.pdf(self.quantile(p)), dtype=float)
        if not np.all(dens > 0.0):
            raise SingularDensityError(
                f"{self} has zero/undefined density at a requested quantile"
            )
        with np.errstate(divide="ignore"):
            out = np.where(np.isinf(dens), 0.0, 1.0 / np.where(dens > 0, dens, 1.0))
        return float(out) if np.ndim(out) == 0 else out

    def density_quantile(self, p):
        """q(p) = f(Q(p)), reciprocal of the quantile density."""
        return 1.0 / self.quantile_density(p)

    def mean(self) -> float:
        return self._fam.mean(self.params)

    def variance(self) -> float:
        return self._fam.variance(self.params)

    def std(self) -> float:
        return math.sqrt(self.variance())

    def fourth_standardized_moment(self) -> float:
        return self._fam.fourth_standardized_moment(self.params)

    def sample(self, n: int, seed=None, rng: np.random.Generator | None = None) -> np.ndarray:
        """Draw ``n`` iid values by inverse transform; deterministic per seed."""
        n = check_count(n, "n", minimum=0)
        if rng is None:
            rng = make_rng(seed)
        u = rng.random(n)
        # random() lives in [0, 1); redraw the (measure-zero) exact zeros so
        # quantile() stays inside its open domain
        while True:
            zero = u == 0.0
            if not zero.any():
                break
            u[zero] = rng.random(int(zero.sum()))
        return np.asarray(self._fam.quantile(self.params, u), dtype=float)

    def __str__(self) -> str:
        args = ",".join(f"{v:g}" for v in self.params)
        return f"{_GRAMMAR_NAMES[self.family]}({args})"


def make_rng(seed=None) -> np.random.Generator:
    """Counter-based (Philox) generator; splittable via SeedSequence spawn keys."""
    if isinstance(seed, np.random.Generator):
        return seed
    if isinstance(seed, np.random.SeedSequence):
        return np.random.Generator(np.random.Philox(seed))
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))


_DIST_RE = re.compile(r"^\s*([A-Za-z_][A-Za-z_0-9]*)\s*\(([^()]*)\)\s*$")


def parse_distribution(text: str) -> DistributionSpec:
    """Parse the ``name(p1,p2)`` grammar, e.g. ``lognormal(0,1)`` or ``pareto2(1,3)``."""
    m = _DIST_RE.match(text or "")
    if not m:
        raise DomainError(
            f"cannot parse distribution {text!r}; expected name(p1,p2) with name in "
            f"{sorted(set(_GRAMMAR_NAMES.values()))}, e.g. 'lognormal(0,1)'"
        )
    name = m.group(1).lower()
    if name not in FAMILIES:
        raise DomainError(
            f"unknown family {name!r}; known: {sorted(set(_GRAMMAR_NAMES.values()))}"
        )
    raw = [s for s in m.group(2).split(",") if s.strip()]
    try:
        params = tuple(float(s) for s in raw)
    except ValueError as exc:
        raise DomainError(f"non-numeric parameter in {text!r}") from exc
    return DistributionSpec(name, params)


def quantile(dist: DistributionSpec, p) -> float:
    """The p-th quantile of ``dist`` for p in (0, 1)."""
    out = dist.quantile(p)
    return float(out) if np.ndim(out) == 0 else out


def quantile_density(dist: DistributionSpec, p) -> float:
    out = dist.quantile_density(p)
    return float(out) if np.ndim(out) == 0 else out


def sample(dist: DistributionSpec, n: int, seed=None) -> np.ndarray:
    return dist.sample(n, seed=seed)

"""Deterministic Monte Carlo engine for interval coverage and width.

A configuration is a cartesian grid of cells: (sample-size pair) x (method).
Every trial of every cell draws from an independent counter-based stream
derived from (master seed, cell index, trial index), so results are
identical for any worker count or scheduling order.
"""
from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ._validation import DomainError, QRatioError, check_alpha, check_count, check_probability
from .distributions import DistributionSpec, make_rng, parse_distribution
from .empirical import DEFAULT_BANDWIDTH, BandwidthRule
from .intervals import (
    ci_f_interval,
    ci_median_ratio_pb,
    ci_ratio_quantiles,
    ci_ratio_variances,
    ci_sq_iqr_ratio,
)

__all__ = [
    "MethodSpec",
    "SimConfig",
    "SimCellResult",
    "true_value",
    "run_cell",
    "run_table",
    "results_to_csv",
    "results_to_rows",
    "parse_config",
    "config_from_mapping",
    "load_config",
    "CSV_COLUMNS",
]

# method tag -> requires p
_METHODS = {"pb": False, "rq": True, "riqr": True, "rvar": False, "f": False}


@dataclass(frozen=True)
class MethodSpec:
    """One interval method in a simulation grid: a tag and, when the method
    is quantile-based, the level p."""

    name: str
    p: float | None = None

    def __post_init__(self):
        if self.name not in _METHODS:
            raise DomainError(f"unknown method {self.name!r}; known: {sorted(_METHODS)}")
        if _METHODS[self.name]:
            if self.p is None:
                raise DomainError(f"method {self.name!r} requires a level p")
            upper = 0.5 if self.name == "riqr" else 1.0
            object.__setattr__(self, "p", check_probability(self.p, name="p", upper=upper))
        elif self.p is not None:
            raise DomainError(f"method {self.name!r} does not take a level p")

    @classmethod
    def parse(cls, text: str) -> "MethodSpec":
        """Parse 'pb', 'rq@0.5', 'riqr@0.2', 'rvar', 'f'."""
        text = text.strip()
        if "@" in text:
            name, _, ptext = text.partition("@")
            try:
                p = float(ptext)
            except ValueError as exc:
                raise DomainError(f"bad method level in {text!r}") from exc
            return cls(name.strip(), p)
        return cls(text)

    def label(self) -> str:
        return self.name if self.p is None else f"{self.name}@{self.p:g}"


@dataclass(frozen=True)
class SimConfig:
    """One simulation study: a two-population design swept over sample-size
    pairs and interval methods."""

    dist1: DistributionSpec
    dist2: DistributionSpec
    sample_sizes: tuple[tuple[int, int], ...]
    methods: tuple[MethodSpec, ...]
    alpha: float = 0.05
    trials: int = 2000
    master_seed: int = 0
    width_summary: str = "both"
    bandwidth: BandwidthRule = field(default=DEFAULT_BANDWIDTH)

    def __post_init__(self):
        if not self.sample_sizes:
            raise DomainError("at least one (n1, n2) pair is required")
        sizes = tuple(
            (check_count(n1, "n1", minimum=2), check_count(n2, "n2", minimum=2))
            for n1, n2 in self.sample_sizes
        )
        object.__setattr__(self, "sample_sizes", sizes)
        if not self.methods:
            raise DomainError("at least one method is required")
        object.__setattr__(self, "methods", tuple(self.methods))
        check_alpha(self.alpha)
        if check_count(self.trials, "trials", minimum=1) != self.trials:
            raise DomainError("trials must be a positive integer")
        check_count(self.master_seed, "seed", minimum=0)
        if self.width_summary not in ("mean", "median", "both"):
            raise DomainError(
                f"width_summary must be mean, median or both, got {self.width_summary!r}"
            )

    def cells(self):
        """Row-major (cell_index, (n1, n2), method) enumeration of the grid."""
        idx = 0
        for n1, n2 in self.sample_sizes:
            for method in self.methods:
                yield idx, (n1, n2), method
                idx += 1

    @property
    def n_cells(self) -> int:
        return len(self.sample_sizes) * len(self.methods)


@dataclass(frozen=True)
class SimCellResult:
    """Aggregates for one cell.  ``coverage`` is None when every trial failed."""

    n1: int
    n2: int
    method: MethodSpec
    true_value: float
    coverage: float | None
    mean_width: float | None
    median_width: float | None
    failures: int
    trials_effective: int


def true_value(dist1: DistributionSpec, dist2: DistributionSpec,
               method: MethodSpec | str, p: float | None = None) -> float:
    """The population target each interval is judged against."""
    if isinstance(method, str):
        method = MethodSpec(method, p)
    if method.name == "pb":
        den = float(dist2.quantile(0.5))
        if den == 0.0:
            raise DomainError("median ratio undefined: denominator median is zero")
        return float(dist1.quantile(0.5)) / den
    if method.name == "rq":
        return float(dist1.quantile(method.p) / dist2.quantile(method.p))
    if method.name == "riqr":
        num = float(dist1.quantile(1.0 - method.p) - dist1.quantile(method.p))
        den = float(dist2.quantile(1.0 - method.p) - dist2.quantile(method.p))
        return (num / den) ** 2
    # rvar and f share the ratio-of-variances estimand
    return dist1.variance() / dist2.variance()


def _build_interval(method: MethodSpec, xs, ys, alpha, bandwidth):
    if method.name == "pb":
        return ci_median_ratio_pb(xs, ys, alpha=alpha)
    if method.name == "rq":
        return ci_ratio_quantiles(xs, ys, p=method.p, alpha=alpha, bandwidth=bandwidth)
    if method.name == "riqr":
        return ci_sq_iqr_ratio(xs, ys, p=method.p, alpha=alpha, bandwidth=bandwidth)
    if method.name == "rvar":
        return ci_ratio_variances(xs, ys, alpha=alpha)
    return ci_f_interval(xs, ys, alpha=alpha)


def run_cell(config: SimConfig, cell_index: int, n1: int, n2: int,
             method: MethodSpec) -> SimCellResult:
    """Run all trials of one cell; deterministic in (config, cell_index).

    When the estimand itself does not exist for the design (infinite moments,
    zero denominator median) the cell still runs so widths and failures are
    observable, but coverage is reported as None.
    """
    try:
        target = true_value(config.dist1, config.dist2, method)
    except QRatioError:
        target = float("nan")
    covered = 0
    widths = []
    failures = 0
    for trial in range(config.trials):
        rng = make_rng(np.random.SeedSequence(
            entropy=config.master_seed, spawn_key=(cell_index, trial)))
        xs = config.dist1.sample(n1, rng=rng)
        ys = config.dist2.sample(n2, rng=rng)
        try:
            est = _build_interval(method, xs, ys, config.alpha, config.bandwidth)
        except QRatioError:
            failures += 1
            continue
        if not (np.isfinite(est.lower) and np.isfinite(est.upper)):
            failures += 1
            continue
        covered += est.lower <= target <= est.upper
        widths.append(est.upper - est.lower)
    effective = config.trials - failures
    return SimCellResult(
        n1=n1,
        n2=n2,
        method=method,
        true_value=target,
        coverage=covered / effective if effective and np.isfinite(target) else None,
        mean_width=float(np.mean(widths)) if widths else None,
        median_width=float(np.median(widths)) if widths else None,
        failures=failures,
        trials_effective=effective,
    )


def _run_cell_task(args):
    config, cell_index, n1, n2, method = args
    return cell_index, run_cell(config, cell_index, n1, n2, method)


def run_table(config: SimConfig, workers: int = 1) -> list[SimCellResult]:
    """Map ``run_cell`` over the grid, optionally across processes.

    Output order and values are identical for any ``workers``.
    """
    workers = check_count(workers, "workers", minimum=1)
    tasks = [(config, idx, n1, n2, method) for idx, (n1, n2), method in config.cells()]
    results: dict[int, SimCellResult] = {}
    if workers == 1 or len(tasks) == 1:
        for task in tasks:
            idx, res = _run_cell_task(task)
            results[idx] = res
    else:
        with ProcessPoolExecutor(max_workers=min(workers, len(tasks))) as pool:
            for idx, res in pool.map(_run_cell_task, tasks):
                results[idx] = res
    return [results[i] for i in range(len(tasks))]


CSV_COLUMNS = (
    "dist1", "dist2", "n1", "n2", "method", "p", "alpha", "trials",
    "coverage", "mean_width", "median_width", "failures",
)


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.10g}"
    return str(value)


def results_to_rows(config: SimConfig, results: list[SimCellResult]) -> list[dict]:
    """One dict per cell with the CSV schema's keys."""
    rows = []
    for res in results:
        row = {
            "dist1": str(config.dist1),
            "dist2": str(config.dist2),
            "n1": res.n1,
            "n2": res.n2,
            "method": res.method.name,
            "p": res.method.p,
            "alpha": config.alpha,
            "trials": config.trials,
            "coverage": res.coverage,
            "mean_width": res.mean_width if config.width_summary in ("mean", "both") else None,
            "median_width": res.median_width if config.width_summary in ("median", "both") else None,
            "failures": res.failures,
        }
        rows.append(row)
    return rows


def results_to_csv(config: SimConfig, results: list[SimCellResult]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in results_to_rows(config, results):
        writer.writerow(_fmt(row[col]) for col in CSV_COLUMNS)
    return buf.getvalue()


_CONFIG_KEYS = {
    "dist1", "dist2", "sizes", "methods", "alpha", "trials", "seed", "width_summary",
}


def parse_config(text: str) -> SimConfig:
    """Parse a simulation config.

    Two formats are accepted: a JSON object, or flat ``key = value`` lines
    ('#' starts a comment).  Keys: dist1, dist2, sizes, methods, alpha,
    trials, seed, width_summary.

    Example::

        dist1 = lognormal(0,1)
        dist2 = lognormal(0,1)
        sizes = 50:50, 200:200
        methods = pb, rq@0.5, riqr@0.2, rvar, f
        alpha = 0.05
        trials = 2000
        seed = 1
        width_summary = both
    """
    stripped = text.lstrip()
    data: dict
    if stripped.startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DomainError(f"invalid JSON config: {exc}") from exc
        if not isinstance(data, dict):
            raise DomainError("JSON config must be an object")
    else:
        data = {}
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise DomainError(f"config line {lineno} is not 'key = value': {raw!r}")
            key, _, value = line.partition("=")
            data[key.strip()] = value.strip()
    return config_from_mapping(data)


def config_from_mapping(data: dict) -> SimConfig:
    """Build a SimConfig from a mapping with the documented config keys."""
    unknown = sorted(set(data) - _CONFIG_KEYS)
    if unknown:
        raise DomainError(f"unknown config keys: {', '.join(unknown)}")
    missing = sorted({"dist1", "dist2", "sizes", "methods"} - set(data))
    if missing:
        raise DomainError(f"missing config keys: {', '.join(missing)}")

    def as_dist(value):
        return value if isinstance(value, DistributionSpec) else parse_distribution(str(value))

    sizes_raw = data["sizes"]
    if isinstance(sizes_raw, str):
        pairs = []
        for part in sizes_raw.split(","):
            part = part.strip()
            if not part:
                continue
            sep = ":" if ":" in part else "x"
            a, _, b = part.partition(sep)
            try:
                pairs.append((int(a), int(b)))
            except ValueError as exc:
                raise DomainError(f"bad size pair {part!r}; use n1:n2") from exc
    else:
        pairs = [(int(a), int(b)) for a, b in sizes_raw]

    methods_raw = data["methods"]
    if isinstance(methods_raw, str):
        methods = [MethodSpec.parse(tok) for tok in methods_raw.split(",") if tok.strip()]
    else:
        methods = [MethodSpec.parse(str(tok)) for tok in methods_raw]

    try:
        alpha = float(data.get("alpha", 0.05))
        trials = int(data.get("trials", 2000))
        seed = int(data.get("seed", 0))
    except (TypeError, ValueError) as exc:
        raise DomainError(f"bad numeric config value: {exc}") from exc
    return SimConfig(
        dist1=as_dist(data["dist1"]),
        dist2=as_dist(data["dist2"]),
        sample_sizes=tuple(pairs),
        methods=tuple(methods),
        alpha=alpha,
        trials=trials,
        master_seed=seed,
        width_summary=str(data.get("width_summary", "both")),
    )


def load_config(path) -> SimConfig:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_config(fh.read())

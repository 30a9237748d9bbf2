"""Command line interface: two-sample estimation from CSV files, coverage
simulation, optimal-p search, and the embedded HTTP service."""
from __future__ import annotations

import csv
import json
import sys

import click

from ._validation import DomainError, QRatioError
from .asymptotics import optimal_p
from .distributions import parse_distribution
from .empirical import BandwidthRule, DEFAULT_BANDWIDTH
from .intervals import (
    ci_f_interval,
    ci_median_ratio_pb,
    ci_ratio_quantiles,
    ci_ratio_variances,
    ci_sq_iqr_ratio,
    shoemaker_test,
)
from .simulation import (
    CSV_COLUMNS,
    MethodSpec,
    SimConfig,
    load_config,
    parse_config,
    results_to_csv,
    results_to_rows,
    run_table,
)

_METHOD_CHOICES = ("rq", "riqr", "rvar", "pb", "f", "shoemaker")


def read_sample_csv(path: str):
    """Read the first column of a one-column numeric CSV.

    A non-numeric first row is treated as a header.  Any other row that
    fails to parse (including blank rows) aborts with its row number.
    """
    values = []
    try:
        fh = open(path, "r", encoding="utf-8", newline="")
    except OSError as exc:
        raise DomainError(f"cannot read {path}: {exc.strerror or exc}") from exc
    with fh:
        for rowno, row in enumerate(csv.reader(fh), start=1):
            cell = row[0].strip() if row else ""
            if not cell:
                raise DomainError(f"{path}: row {rowno} is blank")
            try:
                values.append(float(cell))
            except ValueError:
                if rowno == 1:
                    continue  # header
                raise DomainError(f"{path}: row {rowno} is not numeric: {cell!r}") from None
    if not values:
        raise DomainError(f"{path}: no numeric rows")
    return values


def _parse_bandwidth(text: str) -> BandwidthRule:
    text = (text or "").strip().lower().replace("-", "_")
    if text in ("", "hall_sheather", "hs"):
        return BandwidthRule.hall_sheather()
    if text in ("amse", "amse_normal_reference", "plugin"):
        return BandwidthRule.amse_normal_reference()
    try:
        return BandwidthRule.fixed(float(text))
    except ValueError:
        raise DomainError(
            f"bad bandwidth {text!r}: use hall-sheather, amse, or a number in (0,1)"
        ) from None


def _fail(message: str):
    click.echo(f"error: {message}", err=True)
    sys.exit(2)


@click.group()
def main():
    """Two-sample scale and location-ratio inference toolkit."""


@main.command()
@click.option("--x", "x_path", required=True, type=click.Path(), help="CSV with the first sample.")
@click.option("--y", "y_path", required=True, type=click.Path(), help="CSV with the second sample.")
@click.option("--method", required=True, type=click.Choice(_METHOD_CHOICES))
@click.option("--p", type=float, default=None, help="Quantile level (rq/riqr/shoemaker).")
@click.option("--alpha", type=float, default=0.05, show_default=True)
@click.option("--bandwidth", default="hall-sheather", show_default=True,
              help="hall-sheather, amse, or a fixed value in (0,1).")
@click.option("--json", "as_json", is_flag=True, help="Emit a JSON object.")
def estimate(x_path, y_path, method, p, alpha, bandwidth, as_json):
    """Estimate a ratio (with confidence interval) from two CSV samples."""
    try:
        xs = read_sample_csv(x_path)
        ys = read_sample_csv(y_path)
        rule = _parse_bandwidth(bandwidth)
        if method == "shoemaker":
            res = shoemaker_test(xs, ys, p=p if p is not None else 0.25)
            payload = res.to_dict()
            if as_json:
                click.echo(json.dumps(payload))
            else:
                click.echo(
                    f"shoemaker (p={res.p:g}): Z={res.statistic:.6g} "
                    f"p-value={res.p_value:.6g}"
                )
            return
        if method == "rq":
            est = ci_ratio_quantiles(xs, ys, p=p if p is not None else 0.5,
                                     alpha=alpha, bandwidth=rule)
        elif method == "riqr":
            est = ci_sq_iqr_ratio(xs, ys, p=p if p is not None else 0.25,
                                  alpha=alpha, bandwidth=rule)
        elif method == "rvar":
            est = ci_ratio_variances(xs, ys, alpha=alpha)
        elif method == "pb":
            est = ci_median_ratio_pb(xs, ys, alpha=alpha)
        else:
            est = ci_f_interval(xs, ys, alpha=alpha)
    except QRatioError as exc:
        _fail(str(exc))
    if as_json:
        click.echo(json.dumps(est.to_dict()))
    else:
        level = 100 * (1 - est.alpha)
        ptag = f" (p={est.p:g})" if est.p is not None else ""
        click.echo(
            f"{est.method}{ptag}: point={est.point:.6g} "
            f"{level:g}% CI [{est.lower:.6g}, {est.upper:.6g}]"
        )


@main.command()
@click.option("--config", "config_path", type=click.Path(), default=None,
              help="Config file (key=value lines or JSON).")
@click.option("--dist1", default=None, help="e.g. lognormal(0,1)")
@click.option("--dist2", default=None)
@click.option("--sizes", default=None, help="e.g. 50:50,200:200")
@click.option("--methods", default=None, help="e.g. pb,rq@0.5,riqr@0.2,rvar,f")
@click.option("--alpha", type=float, default=None)
@click.option("--trials", type=int, default=None)
@click.option("--seed", type=int, default=None)
@click.option("--width-summary", default=None, type=click.Choice(["mean", "median", "both"]))
@click.option("--workers", type=int, default=1, show_default=True)
@click.option("--out", type=click.Path(), default=None, help="Write the results CSV here.")
@click.option("--json", "as_json", is_flag=True, help="Print results as JSON.")
def simulate(config_path, dist1, dist2, sizes, methods, alpha, trials, seed,
             width_summary, workers, out, as_json):
    """Run a coverage/width simulation grid."""
    try:
        if config_path is not None:
            config = load_config(config_path)
            overrides = {"alpha": alpha, "trials": trials, "master_seed": seed,
                         "width_summary": width_summary}
            updates = {k: v for k, v in overrides.items() if v is not None}
            if updates:
                config = SimConfig(
                    dist1=config.dist1, dist2=config.dist2,
                    sample_sizes=config.sample_sizes, methods=config.methods,
                    alpha=updates.get("alpha", config.alpha),
                    trials=updates.get("trials", config.trials),
                    master_seed=updates.get("master_seed", config.master_seed),
                    width_summary=updates.get("width_summary", config.width_summary),
                )
        else:
            required = {"dist1": dist1, "dist2": dist2, "sizes": sizes, "methods": methods}
            missing = [k for k, v in required.items() if v is None]
            if missing:
                raise DomainError(
                    f"--config or all of --dist1/--dist2/--sizes/--methods required; "
                    f"missing: {', '.join(missing)}"
                )
            config = SimConfig(
                dist1=parse_distribution(dist1),
                dist2=parse_distribution(dist2),
                sample_sizes=tuple(
                    (int(a), int(b))
                    for a, _, b in (s.strip().partition(":") for s in sizes.split(","))
                ),
                methods=tuple(MethodSpec.parse(tok) for tok in methods.split(",")),
                alpha=alpha if alpha is not None else 0.05,
                trials=trials if trials is not None else 2000,
                master_seed=seed if seed is not None else 0,
                width_summary=width_summary if width_summary is not None else "both",
            )
        results = run_table(config, workers=workers)
    except (QRatioError, ValueError) as exc:
        _fail(str(exc))
    csv_text = results_to_csv(config, results)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(csv_text)
    if as_json:
        click.echo(json.dumps(results_to_rows(config, results)))
    else:
        rows = results_to_rows(config, results)
        widths = {col: max(len(col), *(len(_cell(r[col])) for r in rows)) for col in CSV_COLUMNS}
        click.echo("  ".join(col.ljust(widths[col]) for col in CSV_COLUMNS))
        for row in rows:
            click.echo("  ".join(_cell(row[col]).ljust(widths[col]) for col in CSV_COLUMNS))
    if out:
        click.echo(f"wrote {out}", err=True)


def _cell(value) -> str:
    if value is None:
        return "-"
    if isinstance(value, float):
        return f"{value:.4g}"
    return str(value)


@main.command("optimal-p")
@click.option("--dist", required=True, help="e.g. exp(1)")
@click.option("--grid-step", type=float, default=0.001, show_default=True)
@click.option("--json", "as_json", is_flag=True)
def optimal_p_cmd(dist, grid_step, as_json):
    """Level p minimizing the squared-IQR-ratio asymptotic variance."""
    try:
        spec = parse_distribution(dist)
        res = optimal_p(spec, grid_step=grid_step)
    except QRatioError as exc:
        _fail(str(exc))
    if as_json:
        click.echo(json.dumps({"dist": str(spec), "p": res.p, "boundary": res.boundary}))
    else:
        note = " (boundary minimum; ASV decreases toward p=0)" if res.boundary else ""
        click.echo(f"optimal p for {spec}: {res.p:.4f}{note}")


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
def serve(host, port):
    """Run the HTTP JSON service (and the bundled web explorer, if present)."""
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=host, port=port)


if __name__ == "__main__":
    main()

"""Embedded HTTP JSON service: estimation, simulation (with a polled job
store for long runs), optimal-p search and the distribution catalog.

Error contract: 400 for malformed requests, 422 for method-precondition
failures, 404 for unknown jobs; every error body is {"code", "message"}.
"""
from __future__ import annotations

import threading
import uuid
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from ._validation import DomainError, QRatioError
from .asymptotics import optimal_p
from .distributions import FAMILIES, parse_distribution
from .empirical import BandwidthRule
from .intervals import (
    ci_f_interval,
    ci_median_ratio_pb,
    ci_ratio_quantiles,
    ci_ratio_variances,
    ci_sq_iqr_ratio,
    shoemaker_test,
)
from .simulation import SimConfig, config_from_mapping, results_to_rows, run_table

__all__ = ["create_app", "ServiceLimits"]


@dataclass(frozen=True)
class ServiceLimits:
    """Caps that bound UI-triggered work."""

    max_trials: int = 100_000
    max_cells: int = 256
    # trials * sum(n1+n2) above which a simulation becomes a polled job
    sync_work: int = 1_000_000
    job_workers: int = 2


@dataclass
class _Job:
    status: str = "running"  # running | done | failed
    results: list | None = None
    error: dict | None = None


@dataclass
class _JobStore:
    jobs: dict[str, _Job] = field(default_factory=dict)
    lock: threading.Lock = field(default_factory=threading.Lock)

    def create(self) -> str:
        job_id = uuid.uuid4().hex
        with self.lock:
            self.jobs[job_id] = _Job()
        return job_id

    def finish(self, job_id: str, results: list):
        with self.lock:
            job = self.jobs[job_id]
            job.status = "done"
            job.results = results

    def fail(self, job_id: str, error: dict):
        with self.lock:
            job = self.jobs[job_id]
            job.status = "failed"
            job.error = error

    def get(self, job_id: str) -> _Job | None:
        with self.lock:
            return self.jobs.get(job_id)


def _error(status: int, code: str, message: str) -> JSONResponse:
    return JSONResponse(status_code=status, content={"code": code, "message": message})


def _as_float(value, name, default=None):
    if value is None:
        if default is None:
            raise DomainError(f"missing field {name!r}")
        return default
    try:
        return float(value)
    except (TypeError, ValueError):
        raise DomainError(f"field {name!r} must be a number") from None


_BANDWIDTH_KINDS = {
    "hall-sheather": BandwidthRule.hall_sheather,
    "hall_sheather": BandwidthRule.hall_sheather,
    "amse": BandwidthRule.amse_normal_reference,
    "amse_normal_reference": BandwidthRule.amse_normal_reference,
}


def _parse_bandwidth_field(value) -> BandwidthRule:
    if value is None:
        return BandwidthRule.hall_sheather()
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return BandwidthRule.fixed(float(value))
    if isinstance(value, str) and value.lower() in _BANDWIDTH_KINDS:
        return _BANDWIDTH_KINDS[value.lower()]()
    raise DomainError(
        f"field 'bandwidth' must be 'hall-sheather', 'amse' or a number in (0,1), got {value!r}"
    )


def create_app(limits: ServiceLimits | None = None, static_dir: str | None = None) -> FastAPI:
    limits = limits or ServiceLimits()
    app = FastAPI(title="qratio", docs_url=None, redoc_url=None)
    store = _JobStore()
    pool = ThreadPoolExecutor(max_workers=limits.job_workers)

    @app.exception_handler(QRatioError)
    async def _precondition_handler(_request, exc: QRatioError):
        return _error(422, "precondition", str(exc))

    async def _json_body(request: Request) -> dict:
        try:
            body = await request.json()
        except Exception:
            raise _BadRequest("request body is not valid JSON")
        if not isinstance(body, dict):
            raise _BadRequest("request body must be a JSON object")
        return body

    class _BadRequest(Exception):
        def __init__(self, message: str):
            self.message = message

    @app.exception_handler(_BadRequest)
    async def _bad_request_handler(_request, exc: _BadRequest):
        return _error(400, "validation", exc.message)

    @app.post("/api/estimate")
    async def estimate(request: Request):
        body = await _json_body(request)
        for key in ("x", "y"):
            if key not in body:
                raise _BadRequest(f"missing field {key!r} (array of numbers)")
            if not isinstance(body[key], list):
                raise _BadRequest(f"field {key!r} must be an array of numbers")
        method = body.get("method")
        if method not in ("rq", "riqr", "rvar", "pb", "f", "shoemaker"):
            raise _BadRequest(
                "field 'method' must be one of rq, riqr, rvar, pb, f, shoemaker"
            )
        try:
            alpha = _as_float(body.get("alpha"), "alpha", 0.05)
            p = body.get("p")
            p = None if p is None else _as_float(p, "p")
            rule = _parse_bandwidth_field(body.get("bandwidth"))
        except DomainError as exc:
            raise _BadRequest(str(exc))
        xs, ys = body["x"], body["y"]
        if method == "shoemaker":
            return shoemaker_test(xs, ys, p=p if p is not None else 0.25).to_dict()
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
        return est.to_dict()

    def _run_job(job_id: str, config: SimConfig):
        try:
            results = run_table(config, workers=1)
            store.finish(job_id, results_to_rows(config, results))
        except QRatioError as exc:
            store.fail(job_id, {"code": "precondition", "message": str(exc)})
        except Exception as exc:  # surfaced to the poller rather than lost
            store.fail(job_id, {"code": "internal", "message": str(exc)})

    @app.post("/api/simulate")
    async def simulate(request: Request):
        body = await _json_body(request)
        try:
            config = config_from_mapping(body)
        except QRatioError as exc:
            raise _BadRequest(str(exc))
        if config.trials > limits.max_trials:
            raise _BadRequest(f"trials capped at {limits.max_trials}")
        if config.n_cells > limits.max_cells:
            raise _BadRequest(f"grid capped at {limits.max_cells} cells")
        work = config.trials * sum(n1 + n2 for n1, n2 in config.sample_sizes) * len(config.methods)
        job_id = store.create()
        if work <= limits.sync_work:
            _run_job(job_id, config)
            job = store.get(job_id)
            if job.status == "failed":
                code = job.error.get("code", "internal")
                return _error(422 if code == "precondition" else 500,
                              code, job.error.get("message", ""))
            return {"job_id": job_id, "status": "done", "results": job.results}
        pool.submit(_run_job, job_id, config)
        return {"job_id": job_id, "status": "running"}

    @app.get("/api/jobs/{job_id}")
    async def job_status(job_id: str):
        job = store.get(job_id)
        if job is None:
            return _error(404, "not_found", f"unknown job {job_id!r}")
        payload = {"job_id": job_id, "status": job.status}
        if job.status == "done":
            payload["results"] = job.results
        if job.status == "failed":
            payload["error"] = job.error
        return payload

    @app.get("/api/optimal-p")
    async def optimal_p_endpoint(dist: str = ""):
        if not dist:
            raise _BadRequest("query parameter 'dist' is required, e.g. dist=exp(1)")
        try:
            spec = parse_distribution(dist)
        except DomainError as exc:
            raise _BadRequest(str(exc))
        res = optimal_p(spec)
        return {"dist": str(spec), "p": round(res.p, 4), "boundary": res.boundary}

    @app.get("/api/distributions")
    async def distributions():
        seen = []
        for fam in dict.fromkeys(FAMILIES.values()):
            seen.append({
                "family": fam.name,
                "aliases": list(fam.aliases),
                "params": list(fam.param_names),
            })
        return {"families": seen}

    if static_dir is None:
        bundled = Path(__file__).resolve().parent.parent.parent / "frontend" / "dist"
        static_dir = str(bundled) if bundled.is_dir() else None
    if static_dir:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")

    return app

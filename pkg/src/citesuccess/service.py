"""HTTP JSON API for the success-index calculator.

Endpoints (stateless, JSON, UTF-8):

* GET  /v1/estimate?if_t=&if_r=(&k=&alpha=&beta=&q=)  -- IF-only estimate,
  both directions (the estimator is not exactly complementary, so the UI
  never has to issue two calls).
* POST /v1/compare  -- exact success index for two uploaded histograms in
  the JSON corpus schema: {"target": [rows], "reference": [rows]} with
  rows  {"journal_id": ..., "citations": c, "n_articles": n}.
* GET  /v1/health  -- version and the constants in effect.

Bad input is always a 400 with a machine-readable {"error": code} body,
never a 500.  Constant precedence: request > environment > built-in.
Environment: CS_PORT, CS_ALPHA, CS_BETA, CS_Q, CS_K, CS_MAX_BODY_BYTES,
CS_STATIC_DIR (directory with the built calculator bundle, served at /).
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from . import __version__
from .distributions import CitationDistribution, success_index_exact, summarize
from .errors import DomainError
from .fitting import DEFAULT_K, DEFAULT_UNCITED_PARAMS, UncitedCurveParams, estimate_success_index

DEFAULT_MAX_BODY_BYTES = 5_000_000
DEFAULT_PORT = 8077


@dataclass(frozen=True)
class ServiceSettings:
    alpha: float = DEFAULT_UNCITED_PARAMS.alpha
    beta: float = DEFAULT_UNCITED_PARAMS.beta
    q: float = DEFAULT_UNCITED_PARAMS.q
    k: float = DEFAULT_K
    max_body_bytes: int = DEFAULT_MAX_BODY_BYTES
    static_dir: str | None = None
    port: int = DEFAULT_PORT


def settings_from_env(env=os.environ) -> ServiceSettings:
    def num(name: str, default: float) -> float:
        raw = env.get(name)
        return float(raw) if raw is not None else default

    return ServiceSettings(
        alpha=num("CS_ALPHA", DEFAULT_UNCITED_PARAMS.alpha),
        beta=num("CS_BETA", DEFAULT_UNCITED_PARAMS.beta),
        q=num("CS_Q", DEFAULT_UNCITED_PARAMS.q),
        k=num("CS_K", DEFAULT_K),
        max_body_bytes=int(num("CS_MAX_BODY_BYTES", DEFAULT_MAX_BODY_BYTES)),
        static_dir=env.get("CS_STATIC_DIR"),
        port=int(num("CS_PORT", DEFAULT_PORT)),
    )


def _error(status: int, code: str, detail: str) -> JSONResponse:
    return JSONResponse(status_code=status, content={"error": code, "detail": detail})


def _positive_real(params, name: str) -> float:
    raw = params.get(name)
    if raw is None:
        raise ValueError(f"missing required parameter {name!r}")
    try:
        value = float(raw)
    except ValueError:
        raise ValueError(f"parameter {name!r} is not a number: {raw!r}") from None
    if not (math.isfinite(value) and value > 0):
        raise ValueError(f"parameter {name!r} must be a positive real, got {raw!r}")
    return value


def _histogram_from_rows(rows, what: str) -> CitationDistribution:
    if not isinstance(rows, list) or not rows:
        raise DomainError(f"{what}: expected a non-empty array of histogram rows")
    hist: dict[int, int] = {}
    journal_id = ""
    for i, row in enumerate(rows, start=1):
        if not isinstance(row, dict):
            raise DomainError(f"{what} row {i}: expected an object")
        try:
            journal_id = str(row["journal_id"])
            citations = row["citations"]
            n = row["n_articles"]
        except KeyError as exc:
            raise DomainError(f"{what} row {i}: missing field {exc.args[0]!r}") from None
        if not isinstance(citations, int) or isinstance(citations, bool) or citations < 0:
            raise DomainError(f"{what} row {i}: citations must be a non-negative integer")
        if not isinstance(n, int) or isinstance(n, bool) or n < 1:
            raise DomainError(f"{what} row {i}: n_articles must be a positive integer")
        if citations in hist:
            raise DomainError(f"{what} row {i}: duplicate citation bin {citations}")
        hist[citations] = n
    return CitationDistribution.from_histogram(journal_id or what, hist)


def create_app(settings: ServiceSettings | None = None) -> FastAPI:
    settings = settings or settings_from_env()
    app = FastAPI(title="citesuccess", version=__version__)

    @app.middleware("http")
    async def limit_body(request: Request, call_next):
        length = request.headers.get("content-length")
        if length is not None:
            try:
                if int(length) > settings.max_body_bytes:
                    return _error(
                        413, "payload_too_large",
                        f"request body exceeds {settings.max_body_bytes} bytes",
                    )
            except ValueError:
                return _error(400, "invalid_parameter", "malformed Content-Length header")
        return await call_next(request)

    @app.get("/v1/health")
    def health():
        return {
            "status": "ok",
            "version": __version__,
            "constants": {
                "alpha": settings.alpha,
                "beta": settings.beta,
                "q": settings.q,
                "k": settings.k,
            },
        }

    @app.get("/v1/estimate")
    def estimate(request: Request):
        qp = request.query_params
        try:
            if_t = _positive_real(qp, "if_t")
            if_r = _positive_real(qp, "if_r")
            alpha = _positive_real(qp, "alpha") if "alpha" in qp else settings.alpha
            beta = _positive_real(qp, "beta") if "beta" in qp else settings.beta
            q = _positive_real(qp, "q") if "q" in qp else settings.q
            k = _positive_real(qp, "k") if "k" in qp else settings.k
        except ValueError as exc:
            code = "missing_parameter" if "missing" in str(exc) else "invalid_parameter"
            return _error(400, code, str(exc))
        try:
            params = UncitedCurveParams(alpha=alpha, beta=beta, q=q)
            fwd = estimate_success_index(if_t, if_r, params, k)
            bwd = estimate_success_index(if_r, if_t, params, k)
        except DomainError as exc:
            return _error(400, "invalid_parameter", str(exc))
        return {
            "s_forward": fwd.index.value,
            "s_backward": bwd.index.value,
            "ratio_x": fwd.ratio_x,
            "f0_reference": fwd.f0_reference,
            "f0_target": bwd.f0_reference,
            "mode": fwd.mode,
            "mode_backward": bwd.mode,
            "constants_used": {"alpha": alpha, "beta": beta, "q": q, "k": k},
        }

    @app.post("/v1/compare")
    async def compare(request: Request):
        try:
            body = await request.json()
        except Exception:
            return _error(400, "invalid_body", "request body is not valid JSON")
        if not isinstance(body, dict):
            return _error(400, "invalid_body", "expected a JSON object")
        adjustment = body.get("adjustment", 1.0)
        if not isinstance(adjustment, (int, float)) or isinstance(adjustment, bool) or adjustment <= 0:
            return _error(400, "invalid_parameter", "adjustment must be a positive number")
        try:
            target = _histogram_from_rows(body.get("target"), "target")
            reference = _histogram_from_rows(body.get("reference"), "reference")
            s_fwd = success_index_exact(target, reference).value
            s_bwd = success_index_exact(reference, target).value
            st = summarize(target, adjustment)
            sr = summarize(reference, adjustment)
        except DomainError as exc:
            return _error(400, "invalid_histogram", str(exc))

        def as_dict(s):
            return {
                "journal_id": s.journal_id,
                "n_articles": s.n_articles,
                "total_citations": s.total_citations,
                "impact_factor": s.impact_factor,
                "uncited_fraction": s.uncited_fraction,
            }
        return {
            "s_forward": s_fwd,
            "s_backward": s_bwd,
            "target": as_dict(st),
            "reference": as_dict(sr),
        }

    static_dir = settings.static_dir
    if static_dir and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="webui")

    return app


def main() -> None:
    import uvicorn

    settings = settings_from_env()
    uvicorn.run(create_app(settings), host="0.0.0.0", port=settings.port)


if __name__ == "__main__":
    main()

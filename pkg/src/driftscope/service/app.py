"""FastAPI application wrapping the core library.

The service is stateless: models travel inside requests using the same JSON
schema as the model file, so a model fitted over HTTP can be saved by the
client and reused with the CLI, and vice versa.
"""

from __future__ import annotations

import numpy as np
from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__, binning, drift, monitoring, selectk, textvec
from ..datasets import Dataset, EmbeddingRecord, build_dataset, dataset_summary
from ..errors import DriftScopeError
from . import schemas


def _to_dataset(records: list[schemas.RecordIn], name: str = "") -> Dataset:
    return build_dataset(
        [
            EmbeddingRecord(
                id=r.id,
                vector=np.asarray(r.vector, dtype=np.float64),
                label=r.label,
                timestamp=r.timestamp,
                text=r.text,
            )
            for r in records
        ],
        name=name,
    )


def _to_model(payload: schemas.ModelPayload) -> binning.BaselineModel:
    return binning.model_from_dict(payload.model_dump())


def _model_out(model: binning.BaselineModel) -> schemas.ModelPayload:
    return schemas.ModelPayload(**binning.model_to_dict(model))


def _report_out(report: drift.DriftReport) -> schemas.DriftReportOut:
    return schemas.DriftReportOut(**report.to_dict())


def create_app() -> FastAPI:
    app = FastAPI(
        title="driftscope",
        version=__version__,
        description="Distributional-shift monitoring for embedding vectors",
    )

    @app.exception_handler(DriftScopeError)
    async def domain_error_handler(request: Request, exc: DriftScopeError) -> JSONResponse:
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.get("/health", response_model=schemas.HealthResponse)
    def health() -> schemas.HealthResponse:
        return schemas.HealthResponse(status="ok", version=__version__)

    @app.post("/datasets/validate", response_model=schemas.DatasetSummary)
    def validate(req: schemas.ValidateRequest) -> schemas.DatasetSummary:
        ds = _to_dataset(req.records, name=req.name)
        return schemas.DatasetSummary(**dataset_summary(ds))

    @app.post("/baseline/fit", response_model=schemas.ModelPayload)
    def fit(req: schemas.FitRequest) -> schemas.ModelPayload:
        ds = _to_dataset(req.records, name=req.name)
        model = binning.initialize_clusters(
            ds, k=req.k, seed=req.seed, normalize=req.normalize
        )
        return _model_out(model)

    @app.post("/drift", response_model=schemas.DriftReportOut)
    def drift_endpoint(req: schemas.DriftRequest) -> schemas.DriftReportOut:
        model = _to_model(req.model)
        ds = _to_dataset(req.records, name=req.name)
        return _report_out(drift.compute_drift_with_model(model, ds, metric=req.metric))

    @app.post("/select-k", response_model=schemas.SelectKResponse)
    def select_k_endpoint(req: schemas.SelectKRequest) -> schemas.SelectKResponse:
        ds = _to_dataset(req.records)
        result = selectk.select_k(
            ds, m_min=req.m_min, k_min=req.k_min, k_max=req.k_max,
            seed=req.seed, normalize=req.normalize,
        )
        return schemas.SelectKResponse(
            k=result.k,
            used_fallback=result.used_fallback,
            evaluations=[
                schemas.KEvaluationOut(k=e.k, min_count=e.min_count, feasible=e.feasible)
                for e in result.evaluations
            ],
            model=_model_out(result.model),
        )

    @app.post("/monitor", response_model=schemas.MonitorResponse)
    def monitor_endpoint(req: schemas.MonitorRequest) -> schemas.MonitorResponse:
        model = _to_model(req.model)
        events = _to_dataset(req.events, name="events")
        series = monitoring.window_drift(model, events, req.window_seconds, metric=req.metric)
        policy = monitoring.AlertPolicy(threshold=req.threshold, min_events=req.min_events)
        alerts = monitoring.check_alerts(series, policy)
        return schemas.MonitorResponse(
            window_seconds=series.window_seconds,
            points=[
                schemas.WindowPointOut(
                    window_start=p.window_start,
                    n=p.n,
                    report=_report_out(p.report) if p.report else None,
                )
                for p in series.points
            ],
            alerts=[schemas.AlertOut(window_start=a.window_start, value=a.value) for a in alerts],
        )

    @app.post("/summarize", response_model=list[schemas.ClusterSummaryOut])
    def summarize_endpoint(req: schemas.SummarizeRequest) -> list[schemas.ClusterSummaryOut]:
        model = _to_model(req.model)
        ds = _to_dataset(req.records)
        summaries = textvec.cluster_summary(model, ds, top_n=req.top_n, r=req.reps)
        return [
            schemas.ClusterSummaryOut(
                bin=s.bin,
                top_terms=[schemas.TermScore(term=t, score=v) for t, v in s.top_terms],
                representatives=s.representatives,
            )
            for s in summaries
        ]

    return app

"""Pydantic request/response models for the HTTP service."""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field

Metric = Literal["jsd", "tvd", "hellinger"]


class RecordIn(BaseModel):
    id: str
    vector: list[float]
    label: Optional[str] = None
    timestamp: Optional[int] = None
    text: Optional[str] = None


class ModelPayload(BaseModel):
    """Baseline model wire format; identical to the model file schema."""

    version: int = 1
    k: int
    dim: int
    seed: int
    prng: str
    normalize: bool
    centroids: list[list[float]]
    counts: list[int]
    frequencies: list[float]
    created_n: int


class ValidateRequest(BaseModel):
    records: list[RecordIn]
    name: str = ""


class DatasetSummary(BaseModel):
    name: str
    n: int
    dim: int
    labels: dict[str, int]
    with_timestamp: int
    with_text: int


class FitRequest(BaseModel):
    records: list[RecordIn]
    k: int = Field(ge=1)
    seed: int = 0
    normalize: bool = False
    name: str = ""


class DriftRequest(BaseModel):
    model: ModelPayload
    records: list[RecordIn]
    metric: Metric = "jsd"
    name: str = ""


class BinDriftOut(BaseModel):
    bin: int
    p: float
    q: float
    contribution: float


class DriftReportOut(BaseModel):
    value: float
    metric: str
    k: int
    n_base: int
    n_prod: int
    per_bin: list[BinDriftOut]


class SelectKRequest(BaseModel):
    records: list[RecordIn]
    m_min: int = Field(default=50, ge=1)
    k_min: int = Field(default=2, ge=2)
    k_max: int = 100
    seed: int = 0
    normalize: bool = False


class KEvaluationOut(BaseModel):
    k: int
    min_count: int
    feasible: bool


class SelectKResponse(BaseModel):
    k: int
    used_fallback: bool
    evaluations: list[KEvaluationOut]
    model: ModelPayload


class MonitorRequest(BaseModel):
    model: ModelPayload
    events: list[RecordIn]
    window_seconds: int = Field(default=86400, gt=0)
    threshold: float = Field(default=0.1, ge=0.0, le=1.0)
    min_events: int = Field(default=50, ge=1)
    metric: Metric = "jsd"


class WindowPointOut(BaseModel):
    window_start: int
    n: int
    report: Optional[DriftReportOut] = None


class AlertOut(BaseModel):
    window_start: int
    value: float


class MonitorResponse(BaseModel):
    window_seconds: int
    points: list[WindowPointOut]
    alerts: list[AlertOut]


class SummarizeRequest(BaseModel):
    model: ModelPayload
    records: list[RecordIn]
    top_n: int = Field(default=10, ge=1)
    reps: int = Field(default=3, ge=0)


class TermScore(BaseModel):
    term: str
    score: float


class ClusterSummaryOut(BaseModel):
    bin: int
    top_terms: list[TermScore]
    representatives: list[str]


class HealthResponse(BaseModel):
    status: str
    version: str

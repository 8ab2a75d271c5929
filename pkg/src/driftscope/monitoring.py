"""Windowed drift series over timestamped events, with threshold alerts.

Events are partitioned into tumbling windows aligned to the epoch
(left-closed, right-open), each non-empty window is binned against the
baseline model, and empty interior windows are kept in the series as
explicit gaps so downstream plots do not silently interpolate across them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from . import drift
from .binning import BaselineModel
from .datasets import Dataset
from .errors import DriftScopeError
from ._parallel import parallel_map

DEFAULT_MIN_EVENTS = 50
INSUFFICIENT = "insufficient"


@dataclass
class WindowPoint:
    window_start: int
    n: int
    report: Optional[drift.DriftReport]

    def to_dict(self) -> dict:
        return {
            "window_start": self.window_start,
            "n": self.n,
            "report": self.report.to_dict() if self.report is not None else INSUFFICIENT,
        }


@dataclass
class WindowedDriftSeries:
    window_seconds: int
    points: list[WindowPoint] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "window_seconds": self.window_seconds,
            "points": [p.to_dict() for p in self.points],
        }


@dataclass
class AlertPolicy:
    threshold: float
    min_events: int = DEFAULT_MIN_EVENTS

    def __post_init__(self) -> None:
        if not 0.0 <= self.threshold <= 1.0:
            raise DriftScopeError(
                f"alert threshold {self.threshold} outside the metric range [0, 1]"
            )
        if self.min_events < 1:
            raise DriftScopeError("min_events must be positive")


@dataclass
class Alert:
    window_start: int
    value: float

    def to_dict(self) -> dict:
        return {"window_start": self.window_start, "value": self.value}


def window_drift(
    model: BaselineModel,
    events: Dataset,
    window_seconds: int,
    metric: str = "jsd",
    threads: Optional[int] = None,
) -> WindowedDriftSeries:
    """Drift report per tumbling window of the event stream.

    Window assignment is a pure function of the timestamp, so concatenating
    event files and re-running yields the same series.
    """
    if window_seconds <= 0:
        raise DriftScopeError("window_seconds must be positive")
    timestamps = events.require_timestamps()

    groups: dict[int, list[int]] = {}
    for i, ts in enumerate(timestamps):
        groups.setdefault(ts // window_seconds, []).append(i)

    first = min(groups)
    last = max(groups)

    occupied = sorted(groups)

    def compute(idx: int) -> drift.DriftReport:
        window_ds = Dataset(
            records=[events.records[i] for i in groups[idx]],
            dim=events.dim,
            name=f"{events.name}@{idx * window_seconds}",
        )
        return drift.compute_drift_with_model(model, window_ds, metric=metric)

    reports = dict(zip(occupied, parallel_map(compute, occupied, threads=threads)))

    points = []
    for idx in range(first, last + 1):
        start = idx * window_seconds
        if idx in groups:
            points.append(WindowPoint(window_start=start, n=len(groups[idx]), report=reports[idx]))
        else:
            points.append(WindowPoint(window_start=start, n=0, report=None))
    return WindowedDriftSeries(window_seconds=window_seconds, points=points)


def check_alerts(series: WindowedDriftSeries, policy: AlertPolicy) -> list[Alert]:
    """Windows whose drift value strictly exceeds the threshold, evidence-gated."""
    alerts = []
    for point in series.points:
        if point.report is None or point.n < policy.min_events:
            continue
        if point.report.value > policy.threshold:
            alerts.append(Alert(window_start=point.window_start, value=point.report.value))
    return alerts

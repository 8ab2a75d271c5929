"""Histogram distances and drift reports.

The default drift value is the Jensen-Shannon divergence with base-2
logarithms, which keeps every value inside [0, 1] regardless of bin count.
Empty bins need no smoothing: with the 0*log(0)=0 convention JSD stays
finite, so no pseudo-counts are ever added to the histograms.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import binning
from .datasets import Dataset
from .errors import DistributionError

METRICS = ("jsd", "tvd", "hellinger")

_SUM_TOL = 1e-9


def _check_pair(p: np.ndarray, q: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    p = np.asarray(p, dtype=np.float64)
    q = np.asarray(q, dtype=np.float64)
    if p.ndim != 1 or q.ndim != 1:
        raise DistributionError("probability vectors must be one-dimensional")
    if p.shape != q.shape:
        raise DistributionError(f"length mismatch: {p.shape[0]} vs {q.shape[0]}")
    if np.any(p < 0) or np.any(q < 0):
        raise DistributionError("probability vectors must be non-negative")
    for name, vec in (("p", p), ("q", q)):
        total = float(vec.sum())
        if abs(total - 1.0) > _SUM_TOL:
            raise DistributionError(f"{name} sums to {total}, expected 1 within {_SUM_TOL}")
    return p, q


def bin_contributions(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Per-bin JSD terms: 0.5*(p_i*log2(p_i/m_i) + q_i*log2(q_i/m_i)).

    Zero-probability terms contribute exactly zero, and the vector sums to
    jsd(p, q) by construction.
    """
    p, q = _check_pair(p, q)
    m = (p + q) / 2.0
    terms = np.zeros_like(p)
    for vec in (p, q):
        mask = vec > 0
        terms[mask] += 0.5 * vec[mask] * np.log2(vec[mask] / m[mask])
    return terms


def jsd(p: np.ndarray, q: np.ndarray) -> float:
    """Jensen-Shannon divergence with base-2 logs; 0 for identical inputs, 1 max."""
    value = float(bin_contributions(p, q).sum())
    # guard against last-ulp drift outside the mathematical range
    return min(max(value, 0.0), 1.0)


def tvd(p: np.ndarray, q: np.ndarray) -> float:
    p, q = _check_pair(p, q)
    return float(0.5 * np.abs(p - q).sum())


def hellinger(p: np.ndarray, q: np.ndarray) -> float:
    p, q = _check_pair(p, q)
    diff = np.sqrt(p) - np.sqrt(q)
    return float(np.sqrt(0.5 * (diff * diff).sum()))


def distance(p: np.ndarray, q: np.ndarray, metric: str = "jsd") -> float:
    if metric == "jsd":
        return jsd(p, q)
    if metric == "tvd":
        return tvd(p, q)
    if metric == "hellinger":
        return hellinger(p, q)
    raise DistributionError(f"unknown metric {metric!r} (expected one of {METRICS})")


def _contributions_for(p: np.ndarray, q: np.ndarray, metric: str, value: float) -> np.ndarray:
    if metric == "jsd":
        return bin_contributions(p, q)
    if metric == "tvd":
        return 0.5 * np.abs(p - q)
    # hellinger is not additive over bins; report each bin's share of the
    # squared distance rescaled so the contributions still sum to the value
    sq_terms = 0.5 * (np.sqrt(p) - np.sqrt(q)) ** 2
    if value == 0.0:
        return np.zeros_like(sq_terms)
    return sq_terms / value


@dataclass
class BinDrift:
    bin: int
    p: float
    q: float
    contribution: float


@dataclass
class DriftReport:
    """A drift value plus its per-bin decomposition."""

    value: float
    metric: str
    k: int
    n_base: int
    n_prod: int
    per_bin: list[BinDrift] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "metric": self.metric,
            "k": self.k,
            "n_base": self.n_base,
            "n_prod": self.n_prod,
            "per_bin": [
                {"bin": b.bin, "p": b.p, "q": b.q, "contribution": b.contribution}
                for b in self.per_bin
            ],
        }


def report_from_dict(obj: dict) -> DriftReport:
    return DriftReport(
        value=float(obj["value"]),
        metric=str(obj["metric"]),
        k=int(obj["k"]),
        n_base=int(obj["n_base"]),
        n_prod=int(obj["n_prod"]),
        per_bin=[
            BinDrift(
                bin=int(b["bin"]),
                p=float(b["p"]),
                q=float(b["q"]),
                contribution=float(b["contribution"]),
            )
            for b in obj.get("per_bin", [])
        ],
    )


def compute_drift_with_model(
    model: binning.BaselineModel, d_prod: Dataset, metric: str = "jsd"
) -> DriftReport:
    """Bin production data against a fitted baseline and score the histograms."""
    if metric not in METRICS:
        raise DistributionError(f"unknown metric {metric!r} (expected one of {METRICS})")
    hist = binning.bin(model, d_prod)
    p = model.frequencies
    q = hist.frequencies
    value = distance(p, q, metric)
    contributions = _contributions_for(p, q, metric, value)
    per_bin = [
        BinDrift(bin=i, p=float(p[i]), q=float(q[i]), contribution=float(contributions[i]))
        for i in range(model.k)
    ]
    return DriftReport(
        value=value,
        metric=metric,
        k=model.k,
        n_base=model.created_n,
        n_prod=hist.n,
        per_bin=per_bin,
    )


def compute_drift(
    d_base: Dataset,
    d_prod: Dataset,
    k: int,
    seed: int,
    metric: str = "jsd",
    normalize: bool = False,
) -> DriftReport:
    """Fit a baseline on d_base, then measure how far d_prod drifts from it."""
    model = binning.initialize_clusters(d_base, k=k, seed=seed, normalize=normalize)
    return compute_drift_with_model(model, d_prod, metric=metric)

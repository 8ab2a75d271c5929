"""Density-based binning of embedding space.

A baseline fit partitions the space into k nearest-centroid cells and records
the normalized cell frequencies of the baseline data. Any later dataset of
the same dimension can then be binned against the frozen centroids, which is
what makes two histograms comparable: same cells, same assignment rule.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import kmeans
from .datasets import Dataset
from .errors import (
    DimensionMismatchError,
    EmptyDatasetError,
    ModelFileError,
    ModelVersionError,
)
from .rng import PRNG_ALGORITHM

MODEL_FILE_VERSION = 1


def l2_normalize_rows(X: np.ndarray) -> np.ndarray:
    """Row-wise unit vectors; all-zero rows are returned unchanged."""
    norms = np.sqrt((X * X).sum(axis=1, keepdims=True))
    safe = np.where(norms == 0.0, 1.0, norms)
    return X / safe


@dataclass
class Histogram:
    """Per-bin occupancy of one dataset against a fixed set of bins."""

    counts: np.ndarray
    frequencies: np.ndarray
    n: int


@dataclass
class BaselineModel:
    """Frozen binning artifact: centroids plus the baseline bin frequencies.

    Drift values are only meaningful against the exact model that produced
    the baseline histogram, so the seed, PRNG identifier, and preprocessing
    flag travel with the centroids.
    """

    centroids: np.ndarray
    frequencies: np.ndarray
    counts: np.ndarray
    k: int
    dim: int
    seed: int
    normalize: bool
    created_n: int
    prng: str = PRNG_ALGORITHM


def initialize_clusters(
    d_base: Dataset,
    k: int,
    seed: int,
    normalize: bool = False,
    max_iter: int = kmeans.DEFAULT_MAX_ITER,
    tol: float = kmeans.DEFAULT_TOL,
) -> BaselineModel:
    """Fit baseline clusters and their normalized frequency histogram.

    Every baseline point is assigned to its nearest centroid and the per-bin
    counts are divided by the baseline size, so the result is a probability
    vector over the k bins.
    """
    X = d_base.matrix()
    if normalize:
        X = l2_normalize_rows(X)
    model = kmeans.fit(X, k=k, seed=seed, max_iter=max_iter, tol=tol)
    labels = kmeans.assign_many(model.centroids, X)
    counts = np.bincount(labels, minlength=k)
    n = len(d_base)
    return BaselineModel(
        centroids=model.centroids,
        frequencies=counts / n,
        counts=counts,
        k=k,
        dim=d_base.dim,
        seed=seed,
        normalize=normalize,
        created_n=n,
    )


def bin(model: BaselineModel, ds: Dataset) -> Histogram:
    """Assign every record of ds to the model's bins and normalize the counts."""
    if ds.dim != model.dim:
        raise DimensionMismatchError(
            f"dataset '{ds.name}' has dim {ds.dim}, model expects {model.dim}"
        )
    if len(ds) == 0:
        raise EmptyDatasetError("cannot bin an empty dataset")
    X = ds.matrix()
    if model.normalize:
        X = l2_normalize_rows(X)
    labels = kmeans.assign_many(model.centroids, X)
    counts = np.bincount(labels, minlength=model.k)
    return Histogram(counts=counts, frequencies=counts / len(ds), n=len(ds))


def model_to_dict(model: BaselineModel) -> dict:
    return {
        "version": MODEL_FILE_VERSION,
        "k": model.k,
        "dim": model.dim,
        "seed": model.seed,
        "prng": model.prng,
        "normalize": model.normalize,
        "centroids": model.centroids.tolist(),
        "counts": model.counts.tolist(),
        "frequencies": model.frequencies.tolist(),
        "created_n": model.created_n,
    }


def model_from_dict(obj: dict) -> BaselineModel:
    if not isinstance(obj, dict):
        raise ModelFileError("model payload is not an object")
    version = obj.get("version")
    if version != MODEL_FILE_VERSION:
        raise ModelVersionError(
            f"unsupported model file version {version!r} (expected {MODEL_FILE_VERSION})"
        )
    try:
        k = int(obj["k"])
        dim = int(obj["dim"])
        seed = int(obj["seed"])
        prng = str(obj["prng"])
        normalize = bool(obj["normalize"])
        centroids = np.asarray(obj["centroids"], dtype=np.float64)
        counts = np.asarray(obj["counts"], dtype=np.int64)
        frequencies = np.asarray(obj["frequencies"], dtype=np.float64)
        created_n = int(obj["created_n"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ModelFileError(f"model file is missing or mistypes a field: {exc}") from exc

    if centroids.ndim != 2 or centroids.shape != (k, dim):
        raise ModelFileError(
            f"model declares k={k}, dim={dim} but centroids have shape "
            f"{tuple(centroids.shape)}"
        )
    if not np.all(np.isfinite(centroids)):
        raise ModelFileError("model centroids contain non-finite values")
    if counts.shape != (k,) or frequencies.shape != (k,):
        raise ModelFileError("counts and frequencies must each have k entries")
    if np.any(counts < 0) or np.any(frequencies < 0):
        raise ModelFileError("counts and frequencies must be non-negative")
    if int(counts.sum()) != created_n:
        raise ModelFileError(
            f"counts sum to {int(counts.sum())} but created_n is {created_n}"
        )
    if abs(float(frequencies.sum()) - 1.0) > 1e-9:
        raise ModelFileError(f"frequencies sum to {float(frequencies.sum())}, not 1")

    return BaselineModel(
        centroids=centroids,
        frequencies=frequencies,
        counts=counts,
        k=k,
        dim=dim,
        seed=seed,
        normalize=normalize,
        created_n=created_n,
        prng=prng,
    )


def save_model(model: BaselineModel, path: str | Path) -> None:
    Path(path).write_text(json.dumps(model_to_dict(model), indent=2) + "\n", encoding="utf-8")


def load_model(path: str | Path) -> BaselineModel:
    path = Path(path)
    if not path.exists():
        raise ModelFileError(f"model file not found: {path}")
    try:
        obj = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ModelFileError(f"{path}: invalid JSON ({exc.msg})") from exc
    return model_from_dict(obj)

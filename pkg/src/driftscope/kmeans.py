"""Seeded Lloyd's k-means with k-means++ initialization.

This is the space partitioner behind density-based binning, so the contract
is stricter than a general-purpose clusterer: fits are bit-for-bit
deterministic in (data, k, seed, max_iter, tol), assignment ties break toward
the lowest centroid index, and empty clusters are repaired rather than
dropped so a fitted model always has exactly k usable bins.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .datasets import Dataset
from .errors import ClusteringError, DimensionMismatchError
from .rng import make_rng

DEFAULT_MAX_ITER = 300
DEFAULT_TOL = 1e-6

# Points per chunk when forming the (chunk, k, d) difference tensor; bounds
# peak memory without changing any computed value.
_CHUNK = 512


def _as_matrix(points: Union[Dataset, np.ndarray]) -> np.ndarray:
    if isinstance(points, Dataset):
        return points.matrix()
    X = np.asarray(points, dtype=np.float64)
    if X.ndim != 2:
        raise DimensionMismatchError("expected an (n, d) array of points")
    return X


def pairwise_sq_dists(X: np.ndarray, centroids: np.ndarray) -> np.ndarray:
    """Squared Euclidean distances, shape (n, k), computed from explicit diffs."""
    n = X.shape[0]
    out = np.empty((n, centroids.shape[0]), dtype=np.float64)
    for start in range(0, n, _CHUNK):
        stop = min(start + _CHUNK, n)
        diff = X[start:stop, None, :] - centroids[None, :, :]
        out[start:stop] = (diff * diff).sum(axis=2)
    return out


def assign(centroids: np.ndarray, point: np.ndarray) -> int:
    """Index of the nearest centroid; ties go to the lowest index."""
    point = np.asarray(point, dtype=np.float64)
    if point.shape != (centroids.shape[1],):
        raise DimensionMismatchError(
            f"point has {point.shape[0] if point.ndim == 1 else '?'} components, "
            f"centroids have {centroids.shape[1]}"
        )
    diff = centroids - point
    return int(np.argmin((diff * diff).sum(axis=1)))


def assign_many(centroids: np.ndarray, X: np.ndarray) -> np.ndarray:
    """Vectorized nearest-centroid labels for every row of X."""
    if X.shape[1] != centroids.shape[1]:
        raise DimensionMismatchError(
            f"points have {X.shape[1]} components, centroids have {centroids.shape[1]}"
        )
    return np.argmin(pairwise_sq_dists(X, centroids), axis=1)


@dataclass
class KMeansModel:
    centroids: np.ndarray
    inertia: float
    iterations: int
    seed: int


def _plus_plus_init(X: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    """k-means++ seeding: D^2-weighted draws, one candidate per center."""
    n = X.shape[0]
    centers = np.empty((k, X.shape[1]), dtype=np.float64)
    first = int(rng.integers(n))
    centers[0] = X[first]
    diff = X - centers[0]
    closest = (diff * diff).sum(axis=1)
    for j in range(1, k):
        total = closest.sum()
        if total > 0:
            pick = int(rng.choice(n, p=closest / total))
        else:
            # all remaining points coincide with chosen centers
            pick = int(rng.integers(n))
        centers[j] = X[pick]
        diff = X - centers[j]
        closest = np.minimum(closest, (diff * diff).sum(axis=1))
    return centers


def _repair_empty(X: np.ndarray, centroids: np.ndarray, counts: np.ndarray) -> np.ndarray:
    """Move each empty cluster's centroid onto the point farthest from it.

    Ties break toward the lowest record index, and a point already consumed by
    an earlier repair in the same pass is skipped so two empty clusters never
    collapse onto the same location.
    """
    repaired = centroids.copy()
    used: set[int] = set()
    for j in np.flatnonzero(counts == 0):
        diff = X - centroids[j]
        d2 = (diff * diff).sum(axis=1)
        order = np.argsort(-d2, kind="stable")
        for cand in order:
            if int(cand) not in used:
                repaired[j] = X[cand]
                used.add(int(cand))
                break
    return repaired


def fit(
    points: Union[Dataset, np.ndarray],
    k: int,
    seed: int,
    max_iter: int = DEFAULT_MAX_ITER,
    tol: float = DEFAULT_TOL,
) -> KMeansModel:
    """Run seeded k-means++ plus Lloyd iterations to convergence.

    Stops when the label assignment reaches a fixpoint, when the relative
    inertia improvement drops below tol, or after max_iter rounds. The
    returned centroids are the ones the final inertia was measured against.
    """
    X = _as_matrix(points)
    n = X.shape[0]
    if k <= 0:
        raise ClusteringError("number of clusters must be positive")
    if max_iter < 1:
        raise ClusteringError("max_iter must be at least 1")
    if tol < 0:
        raise ClusteringError("tol must be non-negative")
    if n == 0:
        raise ClusteringError("cannot fit k-means on an empty dataset")
    n_distinct = np.unique(X, axis=0).shape[0]
    if k > n_distinct:
        raise ClusteringError(
            f"k={k} exceeds the number of distinct points ({n_distinct})"
        )

    rng = make_rng(seed)
    centroids = _plus_plus_init(X, k, rng)

    prev_labels: np.ndarray | None = None
    prev_inertia: float | None = None
    labels = np.zeros(n, dtype=np.intp)
    inertia = 0.0
    iterations = 0

    for iterations in range(1, max_iter + 1):
        d2 = pairwise_sq_dists(X, centroids)
        labels = np.argmin(d2, axis=1)
        inertia = float(d2[np.arange(n), labels].sum())
        if prev_inertia is not None:
            # Lloyd steps (and the repair rule) never increase inertia
            assert inertia <= prev_inertia * (1.0 + 1e-12) + 1e-12, (
                f"inertia increased: {prev_inertia} -> {inertia}"
            )
        if prev_labels is not None and np.array_equal(labels, prev_labels):
            break
        if prev_inertia is not None:
            if prev_inertia == 0.0:
                break
            if (prev_inertia - inertia) / prev_inertia < tol:
                break

        counts = np.bincount(labels, minlength=k)
        sums = np.zeros((k, X.shape[1]), dtype=np.float64)
        np.add.at(sums, labels, X)
        nonzero = counts > 0
        if nonzero.all():
            centroids = sums / counts[:, None]
        else:
            updated = _repair_empty(X, centroids, counts)
            updated[nonzero] = sums[nonzero] / counts[nonzero, None]
            centroids = updated
        prev_labels = labels
        prev_inertia = inertia

    return KMeansModel(
        centroids=centroids, inertia=inertia, iterations=iterations, seed=seed
    )

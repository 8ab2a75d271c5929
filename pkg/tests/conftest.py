"""Shared fixtures and independent oracles.

The oracles here deliberately avoid the library's vectorized code paths:
plain Python loops for nearest-centroid assignment and a math.log2 JSD so
test expectations never inherit a bug from the code under test.
"""

from __future__ import annotations

import math

import numpy as np
import pytest

from driftscope.datasets import Dataset, EmbeddingRecord, build_dataset
from driftscope.rng import make_rng


def brute_force_counts(centroids, vectors) -> list[int]:
    """Exhaustive nearest-centroid scan; ties go to the lowest centroid index."""
    counts = [0] * len(centroids)
    for vec in vectors:
        best = 0
        best_d = None
        for i, c in enumerate(centroids):
            d = 0.0
            for a, b in zip(vec, c):
                d += (a - b) * (a - b)
            if best_d is None or d < best_d:
                best, best_d = i, d
        counts[best] += 1
    return counts


def jsd_reference(p, q) -> float:
    """Loop-and-log2 JSD used to derive expected values independently."""
    total = 0.0
    for pi, qi in zip(p, q):
        m = (pi + qi) / 2.0
        if pi > 0:
            total += 0.5 * pi * math.log2(pi / m)
        if qi > 0:
            total += 0.5 * qi * math.log2(qi / m)
    return total


def random_dataset(n: int, dim: int, seed: int, name: str = "random") -> Dataset:
    rng = make_rng(seed)
    records = [
        EmbeddingRecord(id=f"r{i:04d}", vector=rng.normal(size=dim)) for i in range(n)
    ]
    return build_dataset(records, name=name)


def blob_dataset(
    means,
    per_blob,
    sigma: float = 0.5,
    seed: int = 0,
    name: str = "blobs",
    label_prefix: str = "blob",
) -> Dataset:
    """Gaussian blobs with the generating blob recorded as the record label."""
    rng = make_rng(seed)
    if isinstance(per_blob, int):
        per_blob = [per_blob] * len(means)
    records = []
    idx = 0
    for b, (mean, count) in enumerate(zip(means, per_blob)):
        for _ in range(count):
            vec = rng.normal(loc=np.asarray(mean, dtype=float), scale=sigma)
            records.append(
                EmbeddingRecord(id=f"p{idx:05d}", vector=vec, label=f"{label_prefix}{b}")
            )
            idx += 1
    return build_dataset(records, name=name)


THREE_BLOB_MEANS = [(0.0, 0.0), (8.0, 8.0), (16.0, 0.0)]


@pytest.fixture
def three_blob_base() -> Dataset:
    return blob_dataset(THREE_BLOB_MEANS, 1000, sigma=0.5, seed=11, name="three-blob")

"""Choosing the bin count: the largest k with enough evidence per bin.

k acts as the measurement resolution, so we want it as high as the data can
support. A bin is considered evidenced when it holds at least m_min baseline
points; feasibility of k is the minimum bin count meeting that floor.
Feasibility is treated as monotone non-increasing in k, which justifies a
binary search, but k-means randomness can break monotonicity in practice, so
the search result is verified and a linear scan is used as fallback.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import binning
from .datasets import Dataset
from .errors import ClusteringError, NoFeasibleKError

DEFAULT_M_MIN = 50
DEFAULT_K_MIN = 2
DEFAULT_K_MAX = 100


@dataclass
class KEvaluation:
    k: int
    min_count: int
    feasible: bool


@dataclass
class SelectKResult:
    k: int
    model: binning.BaselineModel
    evaluations: list[KEvaluation]
    used_fallback: bool = False


def select_k(
    d_base: Dataset,
    m_min: int = DEFAULT_M_MIN,
    k_min: int = DEFAULT_K_MIN,
    k_max: int = DEFAULT_K_MAX,
    seed: int = 0,
    normalize: bool = False,
) -> SelectKResult:
    """Binary-search the largest k whose smallest bin still holds m_min points."""
    if m_min < 1:
        raise ClusteringError("m_min must be positive")
    if k_min < 2:
        raise ClusteringError("k_min must be at least 2")
    if k_max < k_min:
        raise ClusteringError(f"k_max ({k_max}) must be >= k_min ({k_min})")

    cache: dict[int, tuple[bool, int, Optional[binning.BaselineModel]]] = {}

    def evaluate(k: int) -> bool:
        if k not in cache:
            try:
                model = binning.initialize_clusters(d_base, k=k, seed=seed, normalize=normalize)
            except ClusteringError:
                # k above the distinct-point count can never be feasible
                cache[k] = (False, 0, None)
            else:
                min_count = int(model.counts.min())
                cache[k] = (min_count >= m_min, min_count, model)
        return cache[k][0]

    if not evaluate(k_min):
        raise NoFeasibleKError(
            f"k={k_min} already leaves a bin below m_min={m_min} "
            f"(n={len(d_base)}); no feasible k in [{k_min}, {k_max}]"
        )

    lo, hi = k_min, k_max
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if evaluate(mid):
            lo = mid
        else:
            hi = mid - 1

    chosen = lo
    used_fallback = False
    # post-check the monotonicity assumption behind the binary search
    if not (chosen == k_max or not evaluate(chosen + 1)):
        used_fallback = True
        chosen = max(k for k in range(k_min, k_max + 1) if evaluate(k))

    evaluations = [
        KEvaluation(k=k, min_count=cache[k][1], feasible=cache[k][0])
        for k in sorted(cache)
    ]
    model = cache[chosen][2]
    assert model is not None
    return SelectKResult(k=chosen, model=model, evaluations=evaluations, used_fallback=used_fallback)

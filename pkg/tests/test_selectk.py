import math

import pytest

from driftscope import binning, selectk
from driftscope.errors import ClusteringError, NoFeasibleKError

from conftest import blob_dataset, random_dataset


def ten_blob_dataset(per_blob: int = 100, seed: int = 0):
    means = [
        (20.0 * math.cos(2 * math.pi * i / 10), 20.0 * math.sin(2 * math.pi * i / 10))
        for i in range(10)
    ]
    return blob_dataset(means, per_blob, sigma=0.5, seed=seed, name="ten-blob")


def feasible_linear_scan(ds, m_min, k_min, k_max, seed):
    """Independent oracle: evaluate every k and take the largest feasible."""
    best = None
    for k in range(k_min, k_max + 1):
        try:
            model = binning.initialize_clusters(ds, k=k, seed=seed)
        except ClusteringError:
            continue
        if int(model.counts.min()) >= m_min:
            best = k
    return best


def test_ten_blobs_select_ten():
    ds = ten_blob_dataset()
    result = selectk.select_k(ds, m_min=90, k_min=2, k_max=20, seed=7)
    assert result.k == 10
    assert result.k == feasible_linear_scan(ds, 90, 2, 20, seed=7)
    assert int(result.model.counts.min()) >= 90


def test_result_is_boundary_feasible():
    ds = ten_blob_dataset(seed=3)
    result = selectk.select_k(ds, m_min=90, k_min=2, k_max=20, seed=1)
    assert int(result.model.counts.min()) >= 90
    if result.k < 20:
        above = binning.initialize_clusters(ds, k=result.k + 1, seed=1)
        assert int(above.counts.min()) < 90


def test_impossible_threshold_errors():
    ds = random_dataset(40, 3, seed=2)
    with pytest.raises(NoFeasibleKError):
        selectk.select_k(ds, m_min=41, k_min=2, k_max=10, seed=0)


def test_min_threshold_gives_k_max():
    # with m_min=1 any binning is feasible: repair leaves no empty clusters
    ds = random_dataset(30, 2, seed=4)
    result = selectk.select_k(ds, m_min=1, k_min=2, k_max=5, seed=0)
    assert result.k == 5


def test_matches_linear_scan_on_small_instances():
    for seed in range(3):
        ds = random_dataset(120, 2, seed=30 + seed)
        result = selectk.select_k(ds, m_min=12, k_min=2, k_max=12, seed=seed)
        oracle = feasible_linear_scan(ds, 12, 2, 12, seed=seed)
        if not result.used_fallback:
            # binary search contract: feasible at k, infeasible at k+1
            assert int(result.model.counts.min()) >= 12
        else:
            assert result.k == oracle


def test_k_max_above_distinct_points_is_infeasible_not_fatal():
    ds = random_dataset(20, 2, seed=5)
    result = selectk.select_k(ds, m_min=1, k_min=2, k_max=40, seed=0)
    assert result.k <= 20


def test_parameter_validation():
    ds = random_dataset(30, 2, seed=6)
    with pytest.raises(ClusteringError):
        selectk.select_k(ds, m_min=0, k_min=2, k_max=5, seed=0)
    with pytest.raises(ClusteringError):
        selectk.select_k(ds, m_min=1, k_min=1, k_max=5, seed=0)
    with pytest.raises(ClusteringError):
        selectk.select_k(ds, m_min=1, k_min=4, k_max=3, seed=0)


def test_evaluations_table_covers_chosen_k():
    ds = ten_blob_dataset(seed=9)
    result = selectk.select_k(ds, m_min=90, k_min=2, k_max=20, seed=2)
    evaluated = {e.k: e for e in result.evaluations}
    assert result.k in evaluated
    assert evaluated[result.k].feasible

import numpy as np
import pytest

from driftscope import experiments
from driftscope.datasets import Dataset, EmbeddingRecord, build_dataset
from driftscope.errors import MissingFieldError, ScenarioError
from driftscope.rng import make_rng

from conftest import THREE_BLOB_MEANS, blob_dataset, jsd_reference


def labeled_dataset(n, dim=3, seed=0, labels=("A", "B")):
    rng = make_rng(seed)
    records = [
        EmbeddingRecord(
            id=f"r{i:05d}", vector=rng.normal(size=dim), label=labels[i % len(labels)]
        )
        for i in range(n)
    ]
    return build_dataset(records, name="labeled")


def label_counts(ds):
    counts = {}
    for rec in ds.records:
        counts[rec.label] = counts.get(rec.label, 0) + 1
    return counts


def test_split_sizes_and_partition():
    ds = labeled_dataset(10)
    base, pool = experiments.split_baseline(ds, 0.4, seed=1)
    assert len(base) == 4
    assert len(pool) == 6
    base_ids = {r.id for r in base.records}
    pool_ids = {r.id for r in pool.records}
    assert base_ids.isdisjoint(pool_ids)
    assert base_ids | pool_ids == {r.id for r in ds.records}


def test_split_deterministic():
    ds = labeled_dataset(50, seed=2)
    a = experiments.split_baseline(ds, 0.3, seed=9)
    b = experiments.split_baseline(ds, 0.3, seed=9)
    assert [r.id for r in a[0].records] == [r.id for r in b[0].records]
    assert [r.id for r in a[1].records] == [r.id for r in b[1].records]


def test_split_40_percent_of_8966():
    ds = labeled_dataset(8966, dim=2, seed=3)
    base, pool = experiments.split_baseline(ds, 0.4, seed=0)
    assert len(base) == 3586
    assert len(pool) == 8966 - 3586


def test_split_rejects_degenerate():
    ds = labeled_dataset(10)
    with pytest.raises(ScenarioError):
        experiments.split_baseline(ds, 0.01, seed=0)
    with pytest.raises(ScenarioError):
        experiments.split_baseline(ds, 1.2, seed=0)


def test_scenario_proportions_exact():
    pool = labeled_dataset(1200, seed=4)
    spec = experiments.ScenarioSpec({"A": 0.75, "B": 0.25}, n=400, seed=5)
    out = experiments.make_scenario(pool, spec)
    assert len(out) == 400
    assert label_counts(out) == {"A": 300, "B": 100}


@pytest.mark.parametrize("n", [4000, 600])
def test_scenario_total_size_pinned(n):
    pool = labeled_dataset(3000, seed=6, labels=("a", "b", "c", "d", "e"))
    out = experiments.make_scenario(
        pool, experiments.ScenarioSpec({"a": 0.6}, n=n, seed=7)
    )
    assert len(out) == n
    counts = label_counts(out)
    assert counts["a"] == round(0.6 * n)
    assert "a" not in {r.label for r in out.records if r.label != "a"}


def test_scenario_remainder_from_non_selected_labels():
    pool = labeled_dataset(900, seed=8, labels=("A", "B", "C"))
    out = experiments.make_scenario(
        pool, experiments.ScenarioSpec({"A": 0.5}, n=200, seed=9)
    )
    counts = label_counts(out)
    assert counts["A"] == 100
    assert counts.get("B", 0) + counts.get("C", 0) == 100


def test_scenario_oversampling_uses_replacement():
    pool = labeled_dataset(40, seed=10)  # 20 of each label
    spec = experiments.ScenarioSpec({"A": 1.0}, n=100, seed=11)
    out = experiments.make_scenario(pool, spec)
    assert len(out) == 100
    assert set(label_counts(out)) == {"A"}


def test_scenario_missing_label_rejected():
    pool = labeled_dataset(100, seed=12)
    with pytest.raises(ScenarioError, match="nosuch"):
        experiments.make_scenario(
            pool, experiments.ScenarioSpec({"nosuch": 0.5}, n=10, seed=0)
        )


def test_largest_remainder_sums_exactly():
    counts = experiments.largest_remainder_counts(
        100, {"A": 1 / 3, "B": 1 / 3, "C": 1 / 3}
    )
    assert sum(counts.values()) == 100
    assert sorted(counts.values(), reverse=True) == [34, 33, 33]


def test_label_jsd_identical_zero():
    ds = labeled_dataset(100, seed=13)
    assert experiments.label_jsd(ds, ds) == 0.0


def test_label_jsd_hand_values():
    base = labeled_dataset(100, seed=14)  # 50 A / 50 B
    prod_records = [
        EmbeddingRecord(id=f"p{i}", vector=np.zeros(3), label="A" if i < 75 else "B")
        for i in range(100)
    ]
    prod = build_dataset(prod_records)
    assert experiments.label_jsd(base, prod) == pytest.approx(0.048795, abs=1e-6)
    assert experiments.label_jsd(base, prod) == pytest.approx(
        jsd_reference([0.5, 0.5], [0.75, 0.25]), abs=1e-12
    )


def test_label_jsd_concentrated_vs_uniform_five():
    labels5 = ("a", "b", "c", "d", "e")
    base = labeled_dataset(500, seed=15, labels=labels5)
    prod = build_dataset(
        [EmbeddingRecord(id=f"p{i}", vector=np.zeros(3), label="a") for i in range(50)]
    )
    expected = jsd_reference([0.2] * 5, [1.0, 0.0, 0.0, 0.0, 0.0])
    assert experiments.label_jsd(base, prod) == pytest.approx(expected, abs=1e-12)


def test_label_jsd_requires_labels():
    ds = labeled_dataset(10, seed=16)
    unlabeled = build_dataset(
        [EmbeddingRecord(id="u", vector=np.zeros(3))], name="u"
    )
    with pytest.raises(MissingFieldError):
        experiments.label_jsd(ds, unlabeled)


@pytest.fixture(scope="module")
def blob_split():
    ds = blob_dataset(THREE_BLOB_MEANS, 800, sigma=0.5, seed=17, name="blobs")
    return experiments.split_baseline(ds, 0.4, seed=18)


def test_sensitivity_curve_shape_and_reference_series(blob_split):
    base, pool = blob_split
    result = experiments.sensitivity_curve(
        base, pool, label="blob0", fractions=[0.2, 0.4, 0.6, 0.8, 1.0],
        n=300, k=3, seed=19,
    )
    assert result.x == [0.2, 0.4, 0.6, 0.8, 1.0]
    assert set(result.series) == {"blobs-base", "labels"}
    assert all(len(pts) == 5 for pts in result.series.values())


def test_sensitivity_curve_minimum_near_baseline_share(blob_split):
    base, pool = blob_split
    share = sum(1 for r in base.records if r.label == "blob0") / len(base)
    fractions = [0.05, 0.15, 0.25, 0.35, 0.5, 0.65, 0.8]
    result = experiments.sensitivity_curve(
        base, pool, label="blob0", fractions=fractions, n=400, k=3, seed=20
    )
    values = [p.mean for p in result.series["blobs-base"]]
    argmin = int(np.argmin(values))
    anchor = int(np.argmin([abs(f - share) for f in fractions]))
    assert abs(argmin - anchor) <= 1


def test_sensitivity_at_baseline_share_is_noise_level(blob_split):
    base, pool = blob_split
    share = sum(1 for r in base.records if r.label == "blob0") / len(base)
    result = experiments.sensitivity_curve(
        base, pool, label="blob0", fractions=[share] * 4, n=400, k=3, seed=21
    )
    # resampling at the baseline mixture only leaves bootstrap noise
    assert all(p.mean < 0.02 for p in result.series["blobs-base"])


def test_sensitivity_deterministic(blob_split):
    base, pool = blob_split
    kwargs = dict(label="blob0", fractions=[0.3, 0.6], n=200, k=3, seed=22)
    a = experiments.sensitivity_curve(base, pool, **kwargs)
    b = experiments.sensitivity_curve(base, pool, **kwargs)
    assert a.to_dict() == b.to_dict()


def test_cluster_sweep_zero_on_identical(blob_split):
    base, _ = blob_split
    result = experiments.cluster_sweep(base, base, ks=[2, 4, 8], seed=23)
    assert all(p.mean == 0.0 for p in result.series["blobs-base"])


def test_cluster_sweep_single_point_matches_compute_drift(blob_split):
    from driftscope import drift

    base, pool = blob_split
    result = experiments.cluster_sweep(base, pool, ks=[3], seed=24)
    direct = drift.compute_drift(base, pool, k=3, seed=24)
    assert result.series["blobs-base"][0].mean == direct.value


def test_dim_sweep_counts_and_full_dim_std(blob_split):
    base, pool = blob_split
    result = experiments.dim_sweep(base, pool, dims=[1, 2], repeats=5, k=3, seed=25)
    assert result.x == [1, 2]
    points = result.series["blobs-base"]
    assert all(p.std >= 0.0 for p in points)
    # full dimension: every repeat sees the identical index set and the
    # k-means seed is fixed, so the five values coincide
    assert points[1].std == 0.0


def test_dim_sweep_deterministic(blob_split):
    base, pool = blob_split
    a = experiments.dim_sweep(base, pool, dims=[1, 2], repeats=3, k=3, seed=26)
    b = experiments.dim_sweep(base, pool, dims=[1, 2], repeats=3, k=3, seed=26)
    assert a.to_dict() == b.to_dict()


def test_dim_sweep_validation(blob_split):
    base, pool = blob_split
    with pytest.raises(Exception):
        experiments.dim_sweep(base, pool, dims=[5], repeats=2, k=3, seed=0)
    with pytest.raises(Exception):
        experiments.dim_sweep(base, pool, dims=[2], repeats=0, k=3, seed=0)

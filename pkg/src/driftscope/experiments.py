"""Synthetic-drift scenarios and sweep harnesses.

The harness replays the drift-measurement studies on any embedding dataset:
split off a baseline, resample the remaining pool at controlled label
proportions, and sweep the knob of interest (mixture fraction, bin count, or
embedding dimension) while recording drift values.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import binning, drift
from .datasets import Dataset, sample_dims, subset
from .errors import DriftScopeError, ScenarioError
from .rng import make_rng
from ._parallel import parallel_map

logger = logging.getLogger(__name__)

_REST = "__rest__"


@dataclass
class ScenarioSpec:
    """Label-proportion recipe for one synthetic production set.

    Labels present in `proportions` are over/undersampled to the given shares
    of n; whatever share remains is drawn uniformly from the other labels.
    """

    proportions: dict[str, float]
    n: int
    seed: int

    def __post_init__(self) -> None:
        if self.n <= 0:
            raise ScenarioError("scenario size n must be positive")
        if not self.proportions:
            raise ScenarioError("scenario needs at least one label proportion")
        for label, p in self.proportions.items():
            if p < 0:
                raise ScenarioError(f"proportion for {label!r} is negative")
        if sum(self.proportions.values()) > 1.0 + 1e-9:
            raise ScenarioError("label proportions sum to more than 1")


@dataclass
class SweepPoint:
    mean: float
    std: float
    n: int = 1

    def to_dict(self) -> dict:
        return {"mean": self.mean, "std": self.std, "n": self.n}


@dataclass
class SweepResult:
    x: list
    series: dict[str, list[SweepPoint]] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "x": list(self.x),
            "series": {name: [p.to_dict() for p in pts] for name, pts in self.series.items()},
        }


def split_baseline(ds: Dataset, frac: float, seed: int) -> tuple[Dataset, Dataset]:
    """Seeded uniform split into (baseline, pool); baseline gets round(frac*n)."""
    if not 0.0 < frac < 1.0:
        raise ScenarioError(f"baseline fraction must be in (0, 1), got {frac}")
    n = len(ds)
    n_base = round(frac * n)
    if n_base == 0 or n_base == n:
        raise ScenarioError(
            f"split of n={n} at frac={frac} leaves an empty side"
        )
    rng = make_rng(seed)
    perm = rng.permutation(n)
    base_idx = np.sort(perm[:n_base])
    pool_idx = np.sort(perm[n_base:])
    return (
        subset(ds, base_idx.tolist(), name=f"{ds.name}-base"),
        subset(ds, pool_idx.tolist(), name=f"{ds.name}-pool"),
    )


def largest_remainder_counts(n: int, shares: dict[str, float]) -> dict[str, int]:
    """Integer counts per key summing exactly to n, by largest-remainder rounding."""
    quotas = {key: share * n for key, share in shares.items()}
    counts = {key: int(np.floor(q)) for key, q in quotas.items()}
    leftover = n - sum(counts.values())
    remainders = sorted(
        quotas, key=lambda key: (-(quotas[key] - counts[key]), key)
    )
    for key in remainders[:leftover]:
        counts[key] += 1
    return counts


def make_scenario(pool: Dataset, spec: ScenarioSpec) -> Dataset:
    """Resample the pool into a production set with the requested label shares.

    Sampling is without replacement whenever the pool suffices and falls back
    to with-replacement (logged) otherwise, since oversampling a small label
    can legitimately need more copies than the pool holds.
    """
    pool.require_labels()
    by_label: dict[str, list[int]] = {}
    for i, rec in enumerate(pool.records):
        by_label.setdefault(rec.label, []).append(i)  # type: ignore[arg-type]

    missing = [lab for lab in spec.proportions if lab not in by_label]
    if missing:
        raise ScenarioError(f"labels not present in pool: {missing}")

    shares = dict(sorted(spec.proportions.items()))
    rest_share = max(0.0, 1.0 - sum(shares.values()))
    shares[_REST] = rest_share
    counts = largest_remainder_counts(spec.n, shares)

    rest_indices = [
        i for i, rec in enumerate(pool.records) if rec.label not in spec.proportions
    ]
    if counts[_REST] > 0 and not rest_indices:
        raise ScenarioError(
            "scenario assigns mass to non-selected labels but the pool has none"
        )

    rng = make_rng(spec.seed)
    chosen: list[int] = []
    for label in sorted(spec.proportions):
        chosen.extend(_draw(by_label[label], counts[label], rng, label))
    chosen.extend(_draw(rest_indices, counts[_REST], rng, "remainder"))
    return subset(pool, chosen, name=f"{pool.name}-scenario")


def _draw(indices: list[int], count: int, rng: np.random.Generator, what: str) -> list[int]:
    if count == 0:
        return []
    if count <= len(indices):
        picked = rng.choice(len(indices), size=count, replace=False)
        picked.sort()
    else:
        logger.warning(
            "sampling %s with replacement: need %d, pool has %d", what, count, len(indices)
        )
        picked = rng.choice(len(indices), size=count, replace=True)
        picked.sort()
    return [indices[i] for i in picked]


def label_distributions(base: Dataset, prod: Dataset) -> tuple[list[str], np.ndarray, np.ndarray]:
    """Empirical label distributions over the union of both label sets."""
    base_labels = base.require_labels()
    prod_labels = prod.require_labels()
    universe = sorted(set(base_labels) | set(prod_labels))
    index = {lab: i for i, lab in enumerate(universe)}
    p = np.zeros(len(universe))
    q = np.zeros(len(universe))
    for lab in base_labels:
        p[index[lab]] += 1
    for lab in prod_labels:
        q[index[lab]] += 1
    return universe, p / len(base_labels), q / len(prod_labels)


def label_jsd(base: Dataset, prod: Dataset) -> float:
    """JSD between the two empirical label distributions."""
    _, p, q = label_distributions(base, prod)
    return drift.jsd(p, q)


def sensitivity_curve(
    base: Dataset,
    pool: Dataset,
    label: str,
    fractions: Sequence[float],
    n: int,
    k: int,
    seed: int,
    metric: str = "jsd",
    normalize: bool = False,
    threads: Optional[int] = None,
) -> SweepResult:
    """Measured drift vs. the injected share of one label (plus the label-JSD reference).

    The baseline model is fitted once; each fraction gets its own scenario
    seeded at seed+index so the sweep is reproducible point by point.
    """
    for f in fractions:
        if not 0.0 <= f <= 1.0:
            raise ScenarioError(f"fractions must lie in [0, 1], got {f}")
    model = binning.initialize_clusters(base, k=k, seed=seed, normalize=normalize)

    def run(item: tuple[int, float]) -> tuple[float, float]:
        i, f = item
        scenario = make_scenario(pool, ScenarioSpec({label: f}, n=n, seed=seed + i))
        report = drift.compute_drift_with_model(model, scenario, metric=metric)
        return report.value, label_jsd(base, scenario)

    values = parallel_map(run, list(enumerate(fractions)), threads=threads)
    series_name = base.name or "embedding"
    return SweepResult(
        x=list(fractions),
        series={
            series_name: [SweepPoint(mean=v, std=0.0) for v, _ in values],
            "labels": [SweepPoint(mean=l, std=0.0) for _, l in values],
        },
    )


def cluster_sweep(
    base: Dataset,
    prod: Dataset,
    ks: Sequence[int],
    seed: int,
    metric: str = "jsd",
    normalize: bool = False,
    threads: Optional[int] = None,
) -> SweepResult:
    """Measured drift vs. bin count on a fixed (baseline, production) pair."""
    if not ks:
        raise DriftScopeError("cluster sweep needs at least one k")

    def run(k: int) -> float:
        return drift.compute_drift(base, prod, k=k, seed=seed, metric=metric, normalize=normalize).value

    values = parallel_map(run, list(ks), threads=threads)
    series_name = base.name or "embedding"
    return SweepResult(
        x=list(ks),
        series={series_name: [SweepPoint(mean=v, std=0.0) for v in values]},
    )


def dim_sweep(
    base: Dataset,
    prod: Dataset,
    dims: Sequence[int],
    repeats: int,
    k: int,
    seed: int,
    metric: str = "jsd",
    normalize: bool = False,
    threads: Optional[int] = None,
) -> SweepResult:
    """Measured drift vs. sampled component count, averaged over seeded repeats.

    Each repeat draws one index set (seed+repeat) applied to baseline and
    production alike; the k-means seed stays fixed so at full dimension the
    repeats coincide exactly. std is the population standard deviation.
    """
    if repeats < 1:
        raise DriftScopeError("repeats must be at least 1")
    if base.dim != prod.dim:
        raise DriftScopeError(
            f"baseline dim {base.dim} != production dim {prod.dim}"
        )
    if not dims:
        raise DriftScopeError("dimension sweep needs at least one dim")
    if max(dims) > base.dim:
        raise DriftScopeError(f"max sweep dim {max(dims)} exceeds data dim {base.dim}")

    def run(item: tuple[int, int]) -> float:
        d, rep = item
        draw_seed = seed + rep
        base_d = sample_dims(base, d, draw_seed)
        prod_d = sample_dims(prod, d, draw_seed)
        return drift.compute_drift(
            base_d, prod_d, k=k, seed=seed, metric=metric, normalize=normalize
        ).value

    tasks = [(d, rep) for d in dims for rep in range(repeats)]
    flat = parallel_map(run, tasks, threads=threads)
    points = []
    for i, _ in enumerate(dims):
        vals = np.array(flat[i * repeats : (i + 1) * repeats])
        # identical repeats (e.g. full dimension) must report exactly zero
        # spread, not the epsilon np.std leaks through its mean
        std = 0.0 if np.all(vals == vals[0]) else float(vals.std())
        points.append(SweepPoint(mean=float(vals.mean()), std=std, n=repeats))
    series_name = base.name or "embedding"
    return SweepResult(x=list(dims), series={series_name: points})

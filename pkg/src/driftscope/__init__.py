"""Drift monitoring for embedding vectors.

Fits density-based bins (k-means cells) on a baseline dataset, bins later
data against the frozen centroids, and quantifies distributional shift with
bounded histogram distances, plus the tooling around that core: bin-count
selection, windowed monitoring with alerts, cluster summaries, and a
synthetic-drift experiment harness.
"""

from .binning import BaselineModel, Histogram, bin, initialize_clusters, load_model, save_model
from .datasets import Dataset, EmbeddingRecord, load_dataset, sample_dims, save_dataset, truncate_dims
from .drift import DriftReport, bin_contributions, compute_drift, compute_drift_with_model, distance, jsd
from .errors import DriftScopeError
from .experiments import ScenarioSpec, SweepResult, cluster_sweep, dim_sweep, label_jsd, make_scenario, sensitivity_curve, split_baseline
from .monitoring import AlertPolicy, WindowedDriftSeries, check_alerts, window_drift
from .selectk import SelectKResult, select_k
from .textvec import ClusterSummary, TfidfVectorizer, cluster_summary, fit_tfidf, transform

__version__ = "0.1.0"

__all__ = [
    "AlertPolicy",
    "BaselineModel",
    "ClusterSummary",
    "Dataset",
    "DriftReport",
    "DriftScopeError",
    "EmbeddingRecord",
    "Histogram",
    "ScenarioSpec",
    "SelectKResult",
    "SweepResult",
    "TfidfVectorizer",
    "WindowedDriftSeries",
    "bin",
    "bin_contributions",
    "check_alerts",
    "cluster_summary",
    "cluster_sweep",
    "compute_drift",
    "compute_drift_with_model",
    "dim_sweep",
    "distance",
    "fit_tfidf",
    "initialize_clusters",
    "jsd",
    "label_jsd",
    "load_dataset",
    "load_model",
    "make_scenario",
    "sample_dims",
    "save_dataset",
    "save_model",
    "select_k",
    "sensitivity_curve",
    "split_baseline",
    "transform",
    "truncate_dims",
    "window_drift",
    "__version__",
]

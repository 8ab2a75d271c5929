"""TF-IDF vectorization and cluster summaries.

TF-IDF plays two roles: it is the classical sparse embedding available
without any model download, and it powers the per-cluster summaries (top
distinctive terms plus representative examples) used to explain what a
drifting bin actually contains.

The variant is pinned for reproducibility: lowercase alphanumeric
tokenization, document-frequency vocabulary selection with lexicographic
tie-breaks, idf(t) = ln((1+N)/(1+df(t))) + 1, and L2-normalized outputs.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional, Sequence

import numpy as np

from . import binning, kmeans
from .datasets import Dataset, EmbeddingRecord, build_dataset
from .errors import DatasetFormatError, EmptyDatasetError, MissingFieldError

_TOKEN_RE = re.compile(r"[a-z0-9]+")

DEFAULT_MAX_VOCAB = 300
SUMMARY_MAX_VOCAB = 1000


def tokenize(text: str, stopwords: Optional[set[str]] = None) -> list[str]:
    """Lowercase and split on non-alphanumeric characters."""
    tokens = _TOKEN_RE.findall(text.lower())
    if stopwords:
        tokens = [t for t in tokens if t not in stopwords]
    return tokens


@dataclass
class TfidfVectorizer:
    """Fitted vocabulary with inverse-document-frequency weights."""

    vocabulary: list[tuple[str, int]]
    idf: np.ndarray
    dim: int
    _index: dict[str, int] = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        if not self._index:
            self._index = {term: i for i, (term, _) in enumerate(self.vocabulary)}


def fit_tfidf(
    corpus: Sequence[str],
    max_vocab: int = DEFAULT_MAX_VOCAB,
    stopwords: Optional[set[str]] = None,
) -> TfidfVectorizer:
    """Build the vocabulary from document frequencies over the corpus.

    The vocabulary keeps the max_vocab highest-df terms; ties are resolved
    lexicographically so the fit does not depend on corpus order.
    """
    if not corpus:
        raise EmptyDatasetError("cannot fit TF-IDF on an empty corpus")
    if max_vocab < 1:
        raise DatasetFormatError("max_vocab must be positive")
    df: dict[str, int] = {}
    for doc in corpus:
        for term in set(tokenize(doc, stopwords)):
            df[term] = df.get(term, 0) + 1
    if not df:
        raise EmptyDatasetError("corpus contains no usable tokens")
    ranked = sorted(df.items(), key=lambda kv: (-kv[1], kv[0]))[:max_vocab]
    n_docs = len(corpus)
    idf = np.array(
        [np.log((1.0 + n_docs) / (1.0 + d)) + 1.0 for _, d in ranked], dtype=np.float64
    )
    return TfidfVectorizer(vocabulary=ranked, idf=idf, dim=len(ranked))


def transform(
    v: TfidfVectorizer, text: str, stopwords: Optional[set[str]] = None
) -> np.ndarray:
    """tf * idf over the fitted vocabulary, L2-normalized (zeros stay zeros)."""
    vec = np.zeros(v.dim, dtype=np.float64)
    for term in tokenize(text, stopwords):
        i = v._index.get(term)
        if i is not None:
            vec[i] += 1.0
    vec *= v.idf
    norm = float(np.sqrt((vec * vec).sum()))
    if norm > 0.0:
        vec /= norm
    return vec


def transform_many(
    v: TfidfVectorizer, texts: Sequence[str], stopwords: Optional[set[str]] = None
) -> np.ndarray:
    return np.stack([transform(v, t, stopwords) for t in texts]) if texts else np.zeros((0, v.dim))


def vectorize_text_records(
    v: TfidfVectorizer,
    rows: Sequence[dict],
    name: str = "",
    stopwords: Optional[set[str]] = None,
) -> Dataset:
    """Turn {id, text, label?, timestamp?} rows into a TF-IDF vector dataset."""
    records = [
        EmbeddingRecord(
            id=row["id"],
            vector=transform(v, row["text"], stopwords),
            label=row.get("label"),
            timestamp=row.get("timestamp"),
            text=row["text"],
        )
        for row in rows
    ]
    return build_dataset(records, name=name)


def load_text_records(path: str | Path) -> list[dict]:
    """Read an NDJSON file of {id, text, label?, timestamp?} rows."""
    path = Path(path)
    if not path.exists():
        raise DatasetFormatError(f"text file not found: {path}")
    rows = []
    with path.open("r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            where = f"{path}:{lineno}"
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise DatasetFormatError(f"{where}: invalid JSON ({exc.msg})") from exc
            if not isinstance(obj, dict) or "id" not in obj or "text" not in obj:
                raise DatasetFormatError(f"{where}: expected an object with 'id' and 'text'")
            rows.append(obj)
    if not rows:
        raise EmptyDatasetError(f"text file {path} contains no records")
    return rows


@dataclass
class ClusterSummary:
    bin: int
    top_terms: list[tuple[str, float]]
    representatives: list[str]

    def to_dict(self) -> dict:
        return {
            "bin": self.bin,
            "top_terms": [{"term": t, "score": s} for t, s in self.top_terms],
            "representatives": list(self.representatives),
        }


def cluster_summary(
    model: binning.BaselineModel,
    ds: Dataset,
    top_n: int = 10,
    r: int = 3,
    stopwords: Optional[set[str]] = None,
    max_vocab: int = SUMMARY_MAX_VOCAB,
) -> list[ClusterSummary]:
    """Summarize each bin by its top distinctive terms and nearest examples.

    Terms are scored by their mean TF-IDF weight over the bin's texts (a fit
    local to the bin), representatives are the r in-bin records closest to
    the centroid. Bins with no text-bearing members yield empty summaries.
    """
    if ds.dim != model.dim:
        raise MissingFieldError(
            f"dataset '{ds.name}' has dim {ds.dim}, model expects {model.dim}"
        )
    X = ds.matrix()
    if model.normalize:
        X = binning.l2_normalize_rows(X)
    labels = kmeans.assign_many(model.centroids, X)

    summaries = []
    for b in range(model.k):
        member_idx = [i for i in np.flatnonzero(labels == b) if ds.records[i].text]
        if not member_idx:
            summaries.append(ClusterSummary(bin=b, top_terms=[], representatives=[]))
            continue
        texts = [ds.records[i].text for i in member_idx]
        try:
            vec = fit_tfidf(texts, max_vocab=max_vocab, stopwords=stopwords)
        except EmptyDatasetError:
            # members carry text but none of it tokenizes
            top_terms = []
        else:
            weights = transform_many(vec, texts, stopwords).mean(axis=0)
            order = sorted(range(vec.dim), key=lambda i: (-weights[i], vec.vocabulary[i][0]))
            top_terms = [
                (vec.vocabulary[i][0], float(weights[i])) for i in order[:top_n]
            ]
        diff = X[member_idx] - model.centroids[b]
        dists = (diff * diff).sum(axis=1)
        nearest = np.argsort(dists, kind="stable")[:r]
        representatives = [ds.records[member_idx[i]].id for i in nearest]
        summaries.append(
            ClusterSummary(bin=b, top_terms=top_terms, representatives=representatives)
        )
    return summaries


def save_text_records(rows: Iterable[dict], path: str | Path) -> None:
    with Path(path).open("w", encoding="utf-8") as fh:
        for row in rows:
            fh.write(json.dumps(row) + "\n")

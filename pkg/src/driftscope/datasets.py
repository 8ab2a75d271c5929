"""Embedding dataset loading, validation, and component-level transforms.

Datasets are ordered collections of embedding records read from NDJSON
(primary) or CSV (secondary) files. A loaded dataset is treated as immutable;
transforms return new datasets that share nothing mutable with their input
except the record ids and metadata strings.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import (
    DatasetFormatError,
    DimensionMismatchError,
    EmptyDatasetError,
    MissingFieldError,
)
from .rng import make_rng

NDJSON_SUFFIXES = {".ndjson", ".jsonl"}


@dataclass
class EmbeddingRecord:
    """One observation: an id, a dense float64 vector, and optional metadata."""

    id: str
    vector: np.ndarray
    label: Optional[str] = None
    timestamp: Optional[int] = None
    text: Optional[str] = None


@dataclass
class Dataset:
    """An ordered, fixed-dimension collection of embedding records."""

    records: list[EmbeddingRecord]
    dim: int
    name: str = ""
    _matrix: Optional[np.ndarray] = field(default=None, repr=False, compare=False)

    def __len__(self) -> int:
        return len(self.records)

    def matrix(self) -> np.ndarray:
        """All vectors stacked into an (n, dim) float64 array (cached)."""
        if self._matrix is None:
            self._matrix = np.stack([r.vector for r in self.records])
        return self._matrix

    def labels(self) -> list[Optional[str]]:
        return [r.label for r in self.records]

    def require_labels(self) -> list[str]:
        missing = [r.id for r in self.records if r.label is None]
        if missing:
            raise MissingFieldError(
                f"dataset '{self.name}': {len(missing)} record(s) lack a label "
                f"(first: {missing[0]!r})"
            )
        return [r.label for r in self.records]  # type: ignore[misc]

    def require_timestamps(self) -> list[int]:
        missing = [r.id for r in self.records if r.timestamp is None]
        if missing:
            raise MissingFieldError(
                f"dataset '{self.name}': {len(missing)} record(s) lack a timestamp "
                f"(first: {missing[0]!r})"
            )
        return [r.timestamp for r in self.records]  # type: ignore[misc]


def build_dataset(records: Sequence[EmbeddingRecord], name: str = "") -> Dataset:
    """Assemble and validate a Dataset from records.

    Enforces the dataset invariants: at least one record, a single shared
    dimension (inferred from the first record), and finite components.
    """
    if not records:
        raise EmptyDatasetError(f"dataset '{name}' has no records")
    dim = int(records[0].vector.shape[0])
    if dim == 0:
        raise DimensionMismatchError(f"record {records[0].id!r} has an empty vector")
    for rec in records:
        if rec.vector.shape != (dim,):
            raise DimensionMismatchError(
                f"record {rec.id!r} has {rec.vector.shape[0]} components, expected {dim}"
            )
        if not np.all(np.isfinite(rec.vector)):
            raise DatasetFormatError(
                f"record {rec.id!r} contains non-finite vector components"
            )
    return Dataset(records=list(records), dim=dim, name=name)


def _record_from_obj(obj: dict, where: str) -> EmbeddingRecord:
    if not isinstance(obj, dict):
        raise DatasetFormatError(f"{where}: expected an object, got {type(obj).__name__}")
    try:
        rec_id = obj["id"]
        vector = obj["vector"]
    except KeyError as exc:
        raise DatasetFormatError(f"{where}: missing required field {exc}") from exc
    if not isinstance(rec_id, str):
        raise DatasetFormatError(f"{where}: 'id' must be a string")
    if not isinstance(vector, list) or not vector:
        raise DatasetFormatError(f"{where}: 'vector' must be a non-empty array")
    try:
        vec = np.asarray(vector, dtype=np.float64)
    except (TypeError, ValueError) as exc:
        raise DatasetFormatError(f"{where}: vector is not numeric") from exc
    if vec.ndim != 1:
        raise DatasetFormatError(f"{where}: vector must be one-dimensional")
    label = obj.get("label")
    if label is not None and not isinstance(label, str):
        raise DatasetFormatError(f"{where}: 'label' must be a string when present")
    timestamp = obj.get("timestamp")
    if timestamp is not None:
        if isinstance(timestamp, bool) or not isinstance(timestamp, int):
            raise DatasetFormatError(f"{where}: 'timestamp' must be an integer when present")
    text = obj.get("text")
    if text is not None and not isinstance(text, str):
        raise DatasetFormatError(f"{where}: 'text' must be a string when present")
    return EmbeddingRecord(id=rec_id, vector=vec, label=label, timestamp=timestamp, text=text)


def _load_ndjson(path: Path) -> list[EmbeddingRecord]:
    records = []
    with path.open("r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            where = f"{path}:{lineno}"
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise DatasetFormatError(f"{where}: invalid JSON ({exc.msg})") from exc
            records.append(_record_from_obj(obj, where))
    return records


def _load_csv(path: Path) -> list[EmbeddingRecord]:
    records = []
    with path.open("r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            return []
        expected_prefix = ["id", "label", "timestamp"]
        if header[:3] != expected_prefix or len(header) < 4:
            raise DatasetFormatError(
                f"{path}:1: CSV header must be id,label,timestamp,v0,...,v{{d-1}}"
            )
        dim = len(header) - 3
        for i, col in enumerate(header[3:]):
            if col != f"v{i}":
                raise DatasetFormatError(
                    f"{path}:1: vector column {i} is named {col!r}, expected 'v{i}'"
                )
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            where = f"{path}:{lineno}"
            if len(row) != dim + 3:
                raise DatasetFormatError(
                    f"{where}: expected {dim + 3} columns, got {len(row)}"
                )
            rec_id, label_s, ts_s = row[0], row[1], row[2]
            try:
                vec = np.asarray([float(x) for x in row[3:]], dtype=np.float64)
            except ValueError as exc:
                raise DatasetFormatError(f"{where}: non-numeric vector component") from exc
            timestamp: Optional[int] = None
            if ts_s != "":
                try:
                    timestamp = int(ts_s)
                except ValueError as exc:
                    raise DatasetFormatError(f"{where}: timestamp must be an integer") from exc
            records.append(
                EmbeddingRecord(
                    id=rec_id,
                    vector=vec,
                    label=label_s if label_s != "" else None,
                    timestamp=timestamp,
                )
            )
    return records


def infer_format(path: str | Path) -> str:
    if Path(path).suffix.lower() == ".csv":
        return "csv"
    return "ndjson"


def load_dataset(path: str | Path, format: Optional[str] = None, name: Optional[str] = None) -> Dataset:
    """Load a vector dataset from an NDJSON or CSV file.

    The dimension is inferred from the first record; every later record must
    match it. Non-finite components are rejected rather than dropped because
    the drift math downstream assumes finite inputs.
    """
    path = Path(path)
    if not path.exists():
        raise DatasetFormatError(f"dataset file not found: {path}")
    fmt = format or infer_format(path)
    if fmt == "ndjson":
        records = _load_ndjson(path)
    elif fmt == "csv":
        records = _load_csv(path)
    else:
        raise DatasetFormatError(f"unknown dataset format {fmt!r} (expected ndjson or csv)")
    if not records:
        raise EmptyDatasetError(f"dataset file {path} contains no records")
    return build_dataset(records, name=name if name is not None else path.stem)


def save_dataset(ds: Dataset, path: str | Path, format: Optional[str] = None) -> None:
    """Write a dataset back to disk; round-trips finite doubles bit-exactly."""
    path = Path(path)
    fmt = format or infer_format(path)
    if fmt == "ndjson":
        with path.open("w", encoding="utf-8") as fh:
            for rec in ds.records:
                obj: dict = {"id": rec.id, "vector": rec.vector.tolist()}
                if rec.label is not None:
                    obj["label"] = rec.label
                if rec.timestamp is not None:
                    obj["timestamp"] = rec.timestamp
                if rec.text is not None:
                    obj["text"] = rec.text
                fh.write(json.dumps(obj) + "\n")
    elif fmt == "csv":
        with path.open("w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["id", "label", "timestamp"] + [f"v{i}" for i in range(ds.dim)])
            for rec in ds.records:
                writer.writerow(
                    [
                        rec.id,
                        rec.label if rec.label is not None else "",
                        rec.timestamp if rec.timestamp is not None else "",
                    ]
                    + [repr(float(x)) for x in rec.vector]
                )
    else:
        raise DatasetFormatError(f"unknown dataset format {fmt!r} (expected ndjson or csv)")


def truncate_dims(ds: Dataset, d: int) -> Dataset:
    """Keep the first d components of every vector, preserving order and metadata."""
    if d <= 0:
        raise DimensionMismatchError("truncation dimension must be positive")
    if d > ds.dim:
        raise DimensionMismatchError(
            f"cannot truncate dataset of dim {ds.dim} to {d} components"
        )
    records = [
        EmbeddingRecord(
            id=r.id,
            vector=np.array(r.vector[:d]),
            label=r.label,
            timestamp=r.timestamp,
            text=r.text,
        )
        for r in ds.records
    ]
    return Dataset(records=records, dim=d, name=ds.name)


def sample_index_set(dim: int, d: int, seed: int) -> np.ndarray:
    """Draw d distinct component indices without replacement, sorted ascending."""
    if d <= 0:
        raise DimensionMismatchError("sample dimension must be positive")
    if d > dim:
        raise DimensionMismatchError(f"cannot sample {d} components from dim {dim}")
    rng = make_rng(seed)
    idx = rng.choice(dim, size=d, replace=False)
    idx.sort()
    return idx


def sample_dims(ds: Dataset, d: int, seed: int) -> Dataset:
    """Project every record onto one seeded random set of d components.

    A single index set is drawn per call and applied to all records, so the
    whole dataset lands in the same subspace; sorting the indices makes the
    output independent of draw order.
    """
    idx = sample_index_set(ds.dim, d, seed)
    records = [
        EmbeddingRecord(
            id=r.id,
            vector=np.array(r.vector[idx]),
            label=r.label,
            timestamp=r.timestamp,
            text=r.text,
        )
        for r in ds.records
    ]
    return Dataset(records=records, dim=d, name=ds.name)


def dataset_summary(ds: Dataset) -> dict:
    """Counts used by the validate workflow: size, dim, labels, field coverage."""
    label_counts: dict[str, int] = {}
    for r in ds.records:
        if r.label is not None:
            label_counts[r.label] = label_counts.get(r.label, 0) + 1
    return {
        "name": ds.name,
        "n": len(ds),
        "dim": ds.dim,
        "labels": dict(sorted(label_counts.items())),
        "with_timestamp": sum(1 for r in ds.records if r.timestamp is not None),
        "with_text": sum(1 for r in ds.records if r.text is not None),
    }


def subset(ds: Dataset, indices: Iterable[int], name: Optional[str] = None) -> Dataset:
    """New dataset referencing the records at the given indices, in that order."""
    records = [ds.records[i] for i in indices]
    if not records:
        raise EmptyDatasetError(f"subset of dataset '{ds.name}' is empty")
    return Dataset(records=records, dim=ds.dim, name=name if name is not None else ds.name)

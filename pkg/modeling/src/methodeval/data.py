"""Canonical dataset loading and the three metric-set definitions.

The input contract is the mining tool's CSV: the header below, bit-exact.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import DatasetFormatError

CSV_HEADER = (
    "project,file_path,method_name,start_line,end_line,"
    "h1_authors,h2_added_loc,h3_changed_loc,h4_num_changes,h5_added_per_loc,"
    "h6_changed_per_change,h7_added_per_deleted,h8_deleted_loc,h9_deleted_per_loc,"
    "c1_all_lines,c2_code_lines,c3_blank_lines,c4_comment_lines,"
    "e1_memory_decay,e2_alertness,label"
)

COLUMNS = CSV_HEADER.split(",")
FEATURE_COLUMNS = COLUMNS[5:20]
HISTORY_COLUMNS = FEATURE_COLUMNS[0:9]
CODE_COLUMNS = FEATURE_COLUMNS[9:13]
HE_COLUMNS = FEATURE_COLUMNS[13:15]


@dataclass(frozen=True)
class MetricSet:
    name: str
    columns: tuple[str, ...]

    def indices(self) -> list[int]:
        return [FEATURE_COLUMNS.index(c) for c in self.columns]


TYPE1 = MetricSet("Type1", tuple(HISTORY_COLUMNS + CODE_COLUMNS))
TYPE2 = MetricSet("Type2", tuple(HE_COLUMNS))
TYPE3 = MetricSet("Type3", tuple(FEATURE_COLUMNS))

METRIC_SETS = {m.name: m for m in (TYPE1, TYPE2, TYPE3)}


@dataclass
class Dataset:
    projects: np.ndarray  # str per row
    X: np.ndarray  # (n, 15) float64 in FEATURE_COLUMNS order
    y: np.ndarray  # (n,) int64 labels

    def project_names(self) -> list[str]:
        seen: list[str] = []
        for name in self.projects:
            if name not in seen:
                seen.append(name)
        return seen

    def for_project(self, project: str) -> tuple[np.ndarray, np.ndarray]:
        mask = self.projects == project
        return self.X[mask], self.y[mask]


def load_dataset(path: str | Path) -> Dataset:
    """Read the canonical CSV; the header must match exactly."""
    with open(path, encoding="utf-8", newline="") as fp:
        reader = csv.reader(fp)
        try:
            header = next(reader)
        except StopIteration:
            raise DatasetFormatError("empty dataset file") from None
        if header != COLUMNS:
            raise DatasetFormatError(
                f"unexpected header: got {','.join(header)[:80]}..."
            )
        projects: list[str] = []
        features: list[list[float]] = []
        labels: list[int] = []
        for lineno, rec in enumerate(reader, start=2):
            if len(rec) != len(COLUMNS):
                raise DatasetFormatError(f"line {lineno}: expected {len(COLUMNS)} fields")
            projects.append(rec[0])
            try:
                features.append([float(v) for v in rec[5:20]])
                labels.append(int(rec[20]))
            except ValueError as exc:
                raise DatasetFormatError(f"line {lineno}: {exc}") from exc
    X = np.array(features, dtype=np.float64).reshape(len(features), 15)
    return Dataset(
        projects=np.array(projects, dtype=object),
        X=X,
        y=np.array(labels, dtype=np.int64),
    )


def planted_signal_data(
    n_rows: int = 5000,
    seed: int = 0,
    noise: float = 0.10,
    threshold_quantile: float = 0.80,
) -> tuple[np.ndarray, np.ndarray]:
    """Synthetic dataset: label depends only on e1 (above its quantile),
    with a fraction of labels flipped; every other column is pure noise."""
    rng = np.random.RandomState(seed)
    X = rng.normal(size=(n_rows, len(FEATURE_COLUMNS)))
    e1 = X[:, FEATURE_COLUMNS.index("e1_memory_decay")]
    y = (e1 > np.quantile(e1, threshold_quantile)).astype(np.int64)
    flip = rng.rand(n_rows) < noise
    y = np.where(flip, 1 - y, y)
    return X, y


def write_synthetic_csv(path: str | Path, X: np.ndarray, y: np.ndarray, project: str = "synthetic") -> None:
    """Serialize arrays as a canonical CSV (identity columns are synthesized)."""
    with open(path, "w", encoding="utf-8", newline="") as fp:
        fp.write(CSV_HEADER + "\n")
        for i in range(len(y)):
            features = ",".join(repr(float(v)) for v in X[i])
            fp.write(f"{project},synth.c,m{i},1,2,{features},{int(y[i])}\n")

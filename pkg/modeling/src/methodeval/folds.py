"""Deterministic stratified k-fold splitting.

Indices of each class are shuffled with the seed and dealt round-robin
with one continuous cursor across classes, so per-class counts and total
fold sizes each differ by at most one.
"""

from __future__ import annotations

import numpy as np

from .errors import SingleClassDataset, TooFewRows


def split_folds(labels: np.ndarray, k: int = 10, seed: int = 0) -> list[np.ndarray]:
    labels = np.asarray(labels)
    n = len(labels)
    if n < k:
        raise TooFewRows(f"{n} rows cannot fill {k} folds")
    classes = np.unique(labels)
    if len(classes) < 2:
        raise SingleClassDataset("stratified folds need both classes present")

    rng = np.random.RandomState(seed)
    folds: list[list[int]] = [[] for _ in range(k)]
    cursor = 0
    for cls in sorted(classes, reverse=True):  # positives dealt first
        idx = np.flatnonzero(labels == cls)
        idx = idx[rng.permutation(len(idx))]
        for row in idx:
            folds[cursor % k].append(int(row))
            cursor += 1
    return [np.sort(np.array(fold, dtype=np.int64)) for fold in folds]


def train_indices(folds: list[np.ndarray], held_out: int) -> np.ndarray:
    parts = [fold for i, fold in enumerate(folds) if i != held_out]
    return np.sort(np.concatenate(parts))

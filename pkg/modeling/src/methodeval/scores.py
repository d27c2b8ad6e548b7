"""Binary-classification scores with explicit degenerate-case conventions.

All zero-denominator cases score 0.0 so ten-fold runs never produce NaNs;
average precision is the step-wise sum of precision times recall increments
over the distinct score thresholds (ties grouped).
"""

from __future__ import annotations

import math

import numpy as np


def confusion_counts(y_true: np.ndarray, y_pred: np.ndarray) -> tuple[int, int, int, int]:
    y_true = np.asarray(y_true).astype(bool)
    y_pred = np.asarray(y_pred).astype(bool)
    tp = int(np.sum(y_true & y_pred))
    fp = int(np.sum(~y_true & y_pred))
    fn = int(np.sum(y_true & ~y_pred))
    tn = int(np.sum(~y_true & ~y_pred))
    return tp, fp, fn, tn


def f1_from_counts(tp: int, fp: int, fn: int) -> float:
    precision = tp / (tp + fp) if tp + fp > 0 else 0.0
    recall = tp / (tp + fn) if tp + fn > 0 else 0.0
    if precision + recall == 0.0:
        return 0.0
    return 2.0 * precision * recall / (precision + recall)


def mcc_from_counts(tp: int, fp: int, fn: int, tn: int) -> float:
    denom = (tp + fp) * (tp + fn) * (tn + fp) * (tn + fn)
    if denom == 0:
        return 0.0
    return (tp * tn - fp * fn) / math.sqrt(denom)


def f1_score(y_true: np.ndarray, y_pred: np.ndarray) -> float:
    tp, fp, fn, _ = confusion_counts(y_true, y_pred)
    return f1_from_counts(tp, fp, fn)


def mcc_score(y_true: np.ndarray, y_pred: np.ndarray) -> float:
    return mcc_from_counts(*confusion_counts(y_true, y_pred))


def average_precision(y_true: np.ndarray, scores: np.ndarray) -> float:
    """AP = sum over distinct thresholds of precision * delta-recall.

    With zero positives the curve is undefined; by convention this
    returns 0.0 (callers flag the fold as degenerate).
    """
    y_true = np.asarray(y_true).astype(np.int64)
    scores = np.asarray(scores, dtype=np.float64)
    positives = int(y_true.sum())
    if positives == 0:
        return 0.0
    order = np.argsort(-scores, kind="stable")
    sorted_scores = scores[order]
    sorted_hits = y_true[order]
    # last index of each tie group
    boundary = np.ones(len(scores), dtype=bool)
    boundary[:-1] = sorted_scores[:-1] != sorted_scores[1:]
    tp = np.cumsum(sorted_hits)[boundary].astype(np.float64)
    predicted = (np.flatnonzero(boundary) + 1).astype(np.float64)
    precision = tp / predicted
    recall = tp / positives
    prev_recall = np.concatenate([[0.0], recall[:-1]])
    return float(np.sum(precision * (recall - prev_recall)))

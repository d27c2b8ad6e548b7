"""Cross-validated evaluation and feature ranking.

One stratified ten-fold pass serves both jobs: every fold's fitted model is
scored on the held-out rows (average precision, F1 and MCC at the 0.5
threshold) and, when requested, explained on those same rows; per-feature
importance is the sum over folds of summed absolute attributions, and rank
1 goes to the largest importance with ties broken by canonical column
order.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .data import MetricSet
from .folds import split_folds, train_indices
from .models import ModelSpec
from .scores import average_precision, f1_score, mcc_score
from .treeshap import from_fitted_model, shap_values


@dataclass
class FoldScore:
    pr_auc: float
    f1: float
    mcc: float
    degenerate: bool = False


@dataclass
class EvalReport:
    metric_set: str
    model: dict
    folds: list[FoldScore]
    project: str | None = None

    @property
    def pr_auc(self) -> float:
        return float(np.mean([f.pr_auc for f in self.folds]))

    @property
    def f1(self) -> float:
        return float(np.mean([f.f1 for f in self.folds]))

    @property
    def mcc(self) -> float:
        return float(np.mean([f.mcc for f in self.folds]))

    @property
    def degenerate_folds(self) -> list[int]:
        return [i for i, f in enumerate(self.folds) if f.degenerate]


@dataclass
class RankReport:
    metric_set: str
    model: dict
    importances: dict[str, float]
    ranks: dict[str, int]
    project: str | None = None

    def rank_of(self, column: str) -> int:
        return self.ranks[column]


def rank_importances(importances: np.ndarray, columns: tuple[str, ...]) -> dict[str, int]:
    """Rank 1 = largest importance; ties broken by column order."""
    order = sorted(range(len(columns)), key=lambda j: (-importances[j], j))
    ranks = {}
    for position, j in enumerate(order, start=1):
        ranks[columns[j]] = position
    return ranks


def cross_validate(
    X: np.ndarray,
    y: np.ndarray,
    metric_set: MetricSet,
    spec: ModelSpec,
    k: int = 10,
    compute_shap: bool = False,
    n_jobs: int = 1,
    project: str | None = None,
) -> tuple[EvalReport, RankReport | None]:
    """Stratified k-fold evaluation, optionally with per-fold attributions."""
    cols = metric_set.indices()
    Xs = np.ascontiguousarray(np.asarray(X, dtype=np.float64)[:, cols])
    y = np.asarray(y, dtype=np.int64)
    folds = split_folds(y, k=k, seed=spec.seed)

    fold_scores: list[FoldScore] = []
    importances = np.zeros(len(cols), dtype=np.float64)
    for held_out in range(k):
        test_idx = folds[held_out]
        train_idx = train_indices(folds, held_out)
        model = spec.build(n_jobs=n_jobs)
        model.fit(Xs[train_idx], y[train_idx])
        proba = model.predict_proba(Xs[test_idx])
        if proba.shape[1] == 2:
            scores = proba[:, 1]
        else:  # training fold held a single class
            scores = np.full(len(test_idx), float(model.classes_[0] == 1))
        y_test = y[test_idx]
        y_pred = (scores >= 0.5).astype(np.int64)

        degenerate = len(np.unique(y_test)) < 2
        fold_scores.append(
            FoldScore(
                pr_auc=average_precision(y_test, scores),
                f1=f1_score(y_test, y_pred),
                mcc=mcc_score(y_test, y_pred),
                degenerate=degenerate,
            )
        )
        if compute_shap:
            ensemble = from_fitted_model(model)
            baseline = Xs[train_idx].mean(axis=0)
            phi = shap_values(ensemble, Xs[test_idx], baseline)
            importances += np.abs(phi).sum(axis=0)

    eval_report = EvalReport(
        metric_set=metric_set.name, model=spec.describe(), folds=fold_scores, project=project
    )
    rank_report = None
    if compute_shap:
        rank_report = RankReport(
            metric_set=metric_set.name,
            model=spec.describe(),
            importances={c: float(v) for c, v in zip(metric_set.columns, importances)},
            ranks=rank_importances(importances, metric_set.columns),
            project=project,
        )
    return eval_report, rank_report


def train_eval(
    X: np.ndarray, y: np.ndarray, metric_set: MetricSet, spec: ModelSpec,
    k: int = 10, n_jobs: int = 1, project: str | None = None,
) -> EvalReport:
    report, _ = cross_validate(X, y, metric_set, spec, k=k, n_jobs=n_jobs, project=project)
    return report


def shap_rank(
    X: np.ndarray, y: np.ndarray, metric_set: MetricSet, spec: ModelSpec,
    k: int = 10, n_jobs: int = 1, project: str | None = None,
) -> RankReport:
    _, ranks = cross_validate(
        X, y, metric_set, spec, k=k, compute_shap=True, n_jobs=n_jobs, project=project
    )
    assert ranks is not None
    return ranks

"""Cross-validation wiring: scores, degenerate folds, ranks, determinism."""

import numpy as np
import pytest

from methodeval.data import FEATURE_COLUMNS, TYPE1, TYPE2, TYPE3
from methodeval.evaluate import cross_validate, rank_importances, shap_rank, train_eval
from methodeval.models import ModelSpec


def signal_data(n=240, seed=0, signal_col="e1_memory_decay"):
    """Label follows one column exactly; everything else is noise."""
    rng = np.random.RandomState(seed)
    X = rng.normal(size=(n, len(FEATURE_COLUMNS)))
    col = FEATURE_COLUMNS.index(signal_col)
    y = (X[:, col] > 0).astype(np.int64)
    return X, y


class TestRankImportances:
    def test_rank_one_is_largest(self):
        ranks = rank_importances(np.array([0.2, 5.0, 1.0]), ("a", "b", "c"))
        assert ranks == {"b": 1, "c": 2, "a": 3}

    def test_ties_break_by_column_order(self):
        ranks = rank_importances(np.array([1.0, 1.0, 2.0, 1.0]), ("a", "b", "c", "d"))
        assert ranks == {"c": 1, "a": 2, "b": 3, "d": 4}

    def test_permutation_property(self):
        rng = np.random.RandomState(4)
        cols = tuple(FEATURE_COLUMNS)
        ranks = rank_importances(rng.rand(15), cols)
        assert sorted(ranks.values()) == list(range(1, 16))


class TestCrossValidate:
    def test_clean_signal_scores_high(self):
        X, y = signal_data()
        report = train_eval(X, y, TYPE2, ModelSpec(seed=0), k=10)
        assert report.pr_auc > 0.9
        assert report.f1 > 0.8
        assert report.mcc > 0.7
        assert len(report.folds) == 10
        assert not report.degenerate_folds

    def test_bounds_always_hold(self):
        X, y = signal_data(seed=3)
        report = train_eval(X, y, TYPE1, ModelSpec(seed=3), k=10)
        for fold in report.folds:
            assert 0.0 <= fold.pr_auc <= 1.0
            assert 0.0 <= fold.f1 <= 1.0
            assert -1.0 <= fold.mcc <= 1.0

    def test_seed_determinism(self):
        X, y = signal_data(seed=5)
        a = train_eval(X, y, TYPE3, ModelSpec(seed=11), k=5)
        b = train_eval(X, y, TYPE3, ModelSpec(seed=11), k=5)
        assert [(f.pr_auc, f.f1, f.mcc) for f in a.folds] == [
            (f.pr_auc, f.f1, f.mcc) for f in b.folds
        ]
        ra = shap_rank(X, y, TYPE3, ModelSpec(seed=11), k=5)
        rb = shap_rank(X, y, TYPE3, ModelSpec(seed=11), k=5)
        assert ra.ranks == rb.ranks
        assert ra.importances == rb.importances

    def test_degenerate_fold_flagged_and_scored_zero(self):
        # 12 rows, 2 positives, 6 folds: most held-out folds have one class
        X = np.random.RandomState(0).normal(size=(12, 15))
        y = np.zeros(12, dtype=np.int64)
        y[:2] = 1
        report = train_eval(X, y, TYPE3, ModelSpec(seed=0), k=6)
        assert report.degenerate_folds  # at least one all-negative fold
        for i in report.degenerate_folds:
            fold = report.folds[i]
            assert fold.pr_auc == 0.0  # no positives: convention

    def test_report_carries_config_and_project(self):
        X, y = signal_data(seed=2, n=120)
        report = train_eval(X, y, TYPE2, ModelSpec(seed=2), k=5, project="demo")
        assert report.project == "demo"
        assert report.model["n_estimators"] == 100


class TestShapRank:
    def test_planted_e1_signal_ranks_first(self):
        X, y = signal_data(seed=1, n=400)
        ranks = shap_rank(X, y, TYPE3, ModelSpec(seed=1), k=5)
        assert ranks.rank_of("e1_memory_decay") == 1
        assert sorted(ranks.ranks.values()) == list(range(1, 16))

    def test_single_feature_set_is_rank_one(self):
        from methodeval.data import MetricSet

        X, y = signal_data(seed=6, n=200)
        single = MetricSet("Solo", ("e1_memory_decay",))
        ranks = shap_rank(X, y, single, ModelSpec(seed=6), k=5)
        assert ranks.ranks == {"e1_memory_decay": 1}

    def test_constant_feature_importance_zero_rank_last(self):
        X, y = signal_data(seed=7, n=300)
        X[:, FEATURE_COLUMNS.index("c4_comment_lines")] = 2.0
        ranks = shap_rank(X, y, TYPE3, ModelSpec(seed=7), k=5)
        assert ranks.importances["c4_comment_lines"] == 0.0
        assert ranks.rank_of("c4_comment_lines") == 15

    def test_boosted_model_supported(self):
        X, y = signal_data(seed=8, n=64)
        # tiny boosted run: patch the estimator count through a direct build
        spec = ModelSpec(kind="boosted", seed=8)
        report, ranks = cross_validate(X, y, TYPE2, spec, k=4, compute_shap=True)
        assert ranks is not None
        assert sorted(ranks.ranks.values()) == [1, 2]
        assert 0.0 <= report.pr_auc <= 1.0

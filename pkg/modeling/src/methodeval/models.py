"""Model configurations: a random forest and a histogram gradient booster.

The configurations are fixed; only the kind and seed vary. The boosted
model records the gradient-boosting parameter set it reproduces (binary
objective, average-precision validation metric, 2000 estimators, learning
rate 0.05, 31 leaves, class-imbalance reweighting on), backed here by
scikit-learn's histogram-based implementation.
"""

from __future__ import annotations

from dataclasses import dataclass

from sklearn.ensemble import HistGradientBoostingClassifier, RandomForestClassifier

FOREST_CONFIG = {
    "algorithm": "random_forest",
    "n_estimators": 100,
    "max_depth": None,
}

BOOSTED_CONFIG = {
    "algorithm": "hist_gradient_boosting",
    "objective": "binary",
    "metric": "average_precision",
    "n_estimators": 2000,
    "learning_rate": 0.05,
    "num_leaves": 31,
    "is_unbalance": True,
}

KINDS = ("forest", "boosted")


@dataclass(frozen=True)
class ModelSpec:
    kind: str = "forest"
    seed: int = 0

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown model kind {self.kind!r}")

    def describe(self) -> dict:
        config = FOREST_CONFIG if self.kind == "forest" else BOOSTED_CONFIG
        return {**config, "seed": self.seed}

    def build(self, n_jobs: int = 1):
        if self.kind == "forest":
            return RandomForestClassifier(
                n_estimators=FOREST_CONFIG["n_estimators"],
                max_depth=FOREST_CONFIG["max_depth"],
                random_state=self.seed,
                n_jobs=n_jobs,
            )
        return HistGradientBoostingClassifier(
            max_iter=BOOSTED_CONFIG["n_estimators"],
            learning_rate=BOOSTED_CONFIG["learning_rate"],
            max_leaf_nodes=BOOSTED_CONFIG["num_leaves"],
            class_weight="balanced",
            early_stopping=False,
            random_state=self.seed,
        )

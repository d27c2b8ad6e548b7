"""methodeval: cross-validated models and Shapley feature ranks for method-level defect datasets."""

__version__ = "0.1.0"

from .aggregate import ProjectResult, aggregate_projects, improvement_pct  # noqa: F401
from .data import METRIC_SETS, TYPE1, TYPE2, TYPE3, Dataset, MetricSet, load_dataset  # noqa: F401
from .evaluate import EvalReport, RankReport, cross_validate, shap_rank, train_eval  # noqa: F401
from .folds import split_folds  # noqa: F401
from .models import ModelSpec  # noqa: F401

"""methodminer: per-method history, code, and human-factor metrics from C Git repositories."""

__version__ = "0.1.0"

from .attribution import ChangeEvent, HistoryMetrics, MethodKey  # noqa: F401
from .cparse import CodeMetrics, LineClass, MethodSpan  # noqa: F401
from .dataset import FeatureRow, ProjectSummary  # noqa: F401
from .gitrepo import AuthorId, CommitRecord, DiffHunk, FileDiff  # noqa: F401
from .human_error import ForgettingCurveParams, HEMetrics  # noqa: F401
from .labeling import KeywordRuleSet  # noqa: F401
from .pipeline import MineResult, mine  # noqa: F401

"""Cross-project aggregation: improvement percentages and rank statistics.

The overall improvement row is the mean of per-project improvements, not
the improvement of mean scores.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .data import FEATURE_COLUMNS
from .errors import ZeroBase
from .evaluate import EvalReport, RankReport

METRIC_FAMILIES = {
    "history": tuple(FEATURE_COLUMNS[0:9]),
    "code": tuple(FEATURE_COLUMNS[9:13]),
    "human_error": tuple(FEATURE_COLUMNS[13:15]),
}


def improvement_pct(base: float, new: float) -> float:
    """100 * (new - base) / base; the base score must be positive."""
    if base <= 0:
        raise ZeroBase(f"improvement needs a positive base, got {base}")
    return 100.0 * (new - base) / base


@dataclass
class ProjectResult:
    project: str
    evals: dict[str, EvalReport]  # keyed by metric-set name
    ranks: RankReport | None = None


@dataclass
class PraucRow:
    project: str
    type1: float
    type2: float
    improvement_2_vs_1: float
    type3: float
    improvement_3_vs_2: float


@dataclass
class PerformanceRow:
    project: str
    type1_f1: float
    type2_f1: float
    type1_mcc: float
    type2_mcc: float


@dataclass
class RankStats:
    feature: str
    average_rank: float
    min_rank: int
    max_rank: int

    @property
    def rank_range(self) -> int:
        return self.max_rank - self.min_rank


@dataclass
class RankDistribution:
    feature: str
    minimum: float
    q1: float
    median: float
    q3: float
    maximum: float


@dataclass
class Aggregate:
    prauc_rows: list[PraucRow]
    prauc_overall: PraucRow
    performance_rows: list[PerformanceRow]
    performance_overall: PerformanceRow
    rank_stats: list[RankStats] = field(default_factory=list)
    rank_distribution: list[RankDistribution] = field(default_factory=list)
    family_average_range: dict[str, float] = field(default_factory=dict)


def _prauc_row(result: ProjectResult) -> PraucRow:
    t1 = result.evals["Type1"].pr_auc
    t2 = result.evals["Type2"].pr_auc
    t3 = result.evals["Type3"].pr_auc
    return PraucRow(
        project=result.project,
        type1=t1,
        type2=t2,
        improvement_2_vs_1=improvement_pct(t1, t2),
        type3=t3,
        improvement_3_vs_2=improvement_pct(t2, t3),
    )


def aggregate_projects(results: list[ProjectResult]) -> Aggregate:
    if not results:
        raise ValueError("aggregate_projects needs at least one project")
    prauc_rows = [_prauc_row(r) for r in results]
    prauc_overall = PraucRow(
        project="Overall Average",
        type1=float(np.mean([r.type1 for r in prauc_rows])),
        type2=float(np.mean([r.type2 for r in prauc_rows])),
        improvement_2_vs_1=float(np.mean([r.improvement_2_vs_1 for r in prauc_rows])),
        type3=float(np.mean([r.type3 for r in prauc_rows])),
        improvement_3_vs_2=float(np.mean([r.improvement_3_vs_2 for r in prauc_rows])),
    )

    performance_rows = [
        PerformanceRow(
            project=r.project,
            type1_f1=r.evals["Type1"].f1,
            type2_f1=r.evals["Type2"].f1,
            type1_mcc=r.evals["Type1"].mcc,
            type2_mcc=r.evals["Type2"].mcc,
        )
        for r in results
    ]
    performance_overall = PerformanceRow(
        project="Overall Average",
        type1_f1=float(np.mean([r.type1_f1 for r in performance_rows])),
        type2_f1=float(np.mean([r.type2_f1 for r in performance_rows])),
        type1_mcc=float(np.mean([r.type1_mcc for r in performance_rows])),
        type2_mcc=float(np.mean([r.type2_mcc for r in performance_rows])),
    )

    rank_stats: list[RankStats] = []
    rank_distribution: list[RankDistribution] = []
    family_average_range: dict[str, float] = {}
    ranked = [r.ranks for r in results if r.ranks is not None]
    if ranked:
        columns = list(ranked[0].ranks.keys())
        per_feature = {c: np.array([rr.ranks[c] for rr in ranked]) for c in columns}
        for c in columns:
            ranks = per_feature[c]
            rank_stats.append(
                RankStats(
                    feature=c,
                    average_rank=float(ranks.mean()),
                    min_rank=int(ranks.min()),
                    max_rank=int(ranks.max()),
                )
            )
            q = np.percentile(ranks, [0, 25, 50, 75, 100])
            rank_distribution.append(RankDistribution(c, *map(float, q)))
        for family, cols in METRIC_FAMILIES.items():
            ranges = [s.rank_range for s in rank_stats if s.feature in cols]
            if ranges:
                family_average_range[family] = float(np.mean(ranges))

    return Aggregate(
        prauc_rows=prauc_rows,
        prauc_overall=prauc_overall,
        performance_rows=performance_rows,
        performance_overall=performance_overall,
        rank_stats=rank_stats,
        rank_distribution=rank_distribution,
        family_average_range=family_average_range,
    )

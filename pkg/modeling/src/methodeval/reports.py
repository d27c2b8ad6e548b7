"""Report rendering: aligned text plus machine-readable CSV tables."""

from __future__ import annotations

import csv
from pathlib import Path
from typing import TextIO

from .aggregate import Aggregate, ProjectResult
from .evaluate import EvalReport, RankReport

EVAL_CSV_HEADER = ["project", "metric_set", "fold", "pr_auc", "f1", "mcc", "degenerate"]
RANK_CSV_HEADER = ["project", "metric_set", "feature", "importance", "rank"]
DISTRIBUTION_CSV_HEADER = ["feature", "min", "q1", "median", "q3", "max"]


def write_eval_csv(reports: list[EvalReport], fp: TextIO) -> None:
    writer = csv.writer(fp, lineterminator="\n")
    writer.writerow(EVAL_CSV_HEADER)
    for report in reports:
        project = report.project or ""
        writer.writerow(
            [project, report.metric_set, "mean",
             f"{report.pr_auc:.6f}", f"{report.f1:.6f}", f"{report.mcc:.6f}", ""]
        )
        for i, fold in enumerate(report.folds):
            writer.writerow(
                [project, report.metric_set, str(i),
                 f"{fold.pr_auc:.6f}", f"{fold.f1:.6f}", f"{fold.mcc:.6f}",
                 "1" if fold.degenerate else "0"]
            )


def write_rank_csv(reports: list[RankReport], fp: TextIO) -> None:
    writer = csv.writer(fp, lineterminator="\n")
    writer.writerow(RANK_CSV_HEADER)
    for report in reports:
        project = report.project or ""
        for feature, importance in report.importances.items():
            writer.writerow(
                [project, report.metric_set, feature,
                 f"{importance:.6f}", str(report.ranks[feature])]
            )


def write_rank_distribution_csv(aggregate: Aggregate, fp: TextIO) -> None:
    writer = csv.writer(fp, lineterminator="\n")
    writer.writerow(DISTRIBUTION_CSV_HEADER)
    for d in aggregate.rank_distribution:
        writer.writerow(
            [d.feature, f"{d.minimum:g}", f"{d.q1:g}", f"{d.median:g}", f"{d.q3:g}", f"{d.maximum:g}"]
        )


def render_model_config(config: dict) -> str:
    pairs = ", ".join(f"{k}={v}" for k, v in config.items())
    return f"model config: {pairs}"


def render_aggregate_text(aggregate: Aggregate, model_config: dict | None = None) -> str:
    lines: list[str] = []
    if model_config:
        lines.append(render_model_config(model_config))
        lines.append("")

    lines.append("PR-AUC by metric set")
    lines.append(f"{'project':<20} {'Type1':>7} {'Type2':>7} {'T2/T1 %':>9} {'Type3':>7} {'T3/T2 %':>9}")
    for row in aggregate.prauc_rows + [aggregate.prauc_overall]:
        lines.append(
            f"{row.project:<20} {row.type1:>7.2f} {row.type2:>7.2f} "
            f"{row.improvement_2_vs_1:>8.2f}% {row.type3:>7.2f} {row.improvement_3_vs_2:>8.2f}%"
        )
    lines.append("")

    lines.append("F1 and MCC (Type1 vs Type2)")
    lines.append(f"{'project':<20} {'T1 F1':>7} {'T2 F1':>7} {'T1 MCC':>7} {'T2 MCC':>7}")
    for row in aggregate.performance_rows + [aggregate.performance_overall]:
        lines.append(
            f"{row.project:<20} {row.type1_f1:>7.2f} {row.type2_f1:>7.2f} "
            f"{row.type1_mcc:>7.2f} {row.type2_mcc:>7.2f}"
        )
    lines.append("")

    if aggregate.rank_stats:
        lines.append("Feature ranks across projects (1 = most important)")
        lines.append(f"{'feature':<24} {'avg rank':>9} {'min':>4} {'max':>4} {'range':>6}")
        for s in aggregate.rank_stats:
            lines.append(
                f"{s.feature:<24} {s.average_rank:>9.2f} {s.min_rank:>4} {s.max_rank:>4} {s.rank_range:>6}"
            )
        lines.append("")
        lines.append("Average rank range by metric family")
        for family, value in aggregate.family_average_range.items():
            lines.append(f"  {family:<12} {value:.2f}")
        lines.append("")
    return "\n".join(lines) + "\n"


def write_report_files(
    out_dir: str | Path,
    eval_reports: list[EvalReport],
    rank_reports: list[RankReport],
    aggregate: Aggregate,
    model_config: dict,
) -> list[Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    with open(out / "eval.csv", "w", encoding="utf-8", newline="") as fp:
        write_eval_csv(eval_reports, fp)
    written.append(out / "eval.csv")
    with open(out / "ranks.csv", "w", encoding="utf-8", newline="") as fp:
        write_rank_csv(rank_reports, fp)
    written.append(out / "ranks.csv")
    with open(out / "rank_distribution.csv", "w", encoding="utf-8", newline="") as fp:
        write_rank_distribution_csv(aggregate, fp)
    written.append(out / "rank_distribution.csv")
    with open(out / "report.txt", "w", encoding="utf-8") as fp:
        fp.write(render_aggregate_text(aggregate, model_config))
    written.append(out / "report.txt")
    return written

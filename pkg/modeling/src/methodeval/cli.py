"""Command-line front end for dataset evaluation."""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .aggregate import ProjectResult, aggregate_projects
from .data import METRIC_SETS, TYPE3, load_dataset, planted_signal_data, write_synthetic_csv
from .errors import MethodEvalError
from .evaluate import cross_validate
from .models import ModelSpec
from .reports import render_aggregate_text, write_report_files

USAGE_ERROR = 2
RUNTIME_ERROR = 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="methodeval",
        description="Evaluate metric families on a method-level defect dataset.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--dataset", required=True, help="canonical dataset CSV")
    common.add_argument("--model", choices=["forest", "boosted"], default="forest")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--folds", type=int, default=10)
    common.add_argument("--jobs", type=int, default=1, help="model-internal parallelism")

    eval_p = sub.add_parser("evaluate", parents=[common], help="score one metric set")
    eval_p.add_argument("--metric-set", choices=sorted(METRIC_SETS), required=True)
    eval_p.add_argument("--project", help="restrict to one project column value")

    report_p = sub.add_parser(
        "report", parents=[common],
        help="full protocol per project: Type1/2/3 scores, feature ranks, aggregate tables",
    )
    report_p.add_argument("--out-dir", required=True)

    synth_p = sub.add_parser("synth", help="write a synthetic planted-signal dataset CSV")
    synth_p.add_argument("--rows", type=int, default=5000)
    synth_p.add_argument("--seed", type=int, default=0)
    synth_p.add_argument("--out", required=True)

    sub.add_parser("version", help="print the tool version")
    return parser


def _cmd_evaluate(args) -> int:
    dataset = load_dataset(args.dataset)
    metric_set = METRIC_SETS[args.metric_set]
    spec = ModelSpec(kind=args.model, seed=args.seed)
    if args.project:
        X, y = dataset.for_project(args.project)
        if len(y) == 0:
            print(f"error: no rows for project {args.project!r}", file=sys.stderr)
            return RUNTIME_ERROR
    else:
        X, y = dataset.X, dataset.y
    report, _ = cross_validate(
        X, y, metric_set, spec, k=args.folds, n_jobs=args.jobs, project=args.project
    )
    print(f"metric_set {report.metric_set}")
    print(f"pr_auc {report.pr_auc:.6f}")
    print(f"f1 {report.f1:.6f}")
    print(f"mcc {report.mcc:.6f}")
    if report.degenerate_folds:
        print(f"degenerate folds: {report.degenerate_folds}")
    return 0


def _cmd_report(args) -> int:
    dataset = load_dataset(args.dataset)
    spec = ModelSpec(kind=args.model, seed=args.seed)
    results: list[ProjectResult] = []
    eval_reports = []
    rank_reports = []
    for project in dataset.project_names():
        X, y = dataset.for_project(project)
        evals = {}
        ranks = None
        for name, metric_set in METRIC_SETS.items():
            want_shap = metric_set is TYPE3
            report, rank = cross_validate(
                X, y, metric_set, spec, k=args.folds,
                compute_shap=want_shap, n_jobs=args.jobs, project=project,
            )
            evals[name] = report
            eval_reports.append(report)
            if rank is not None:
                ranks = rank
                rank_reports.append(rank)
        results.append(ProjectResult(project=project, evals=evals, ranks=ranks))

    aggregate = aggregate_projects(results)
    written = write_report_files(args.out_dir, eval_reports, rank_reports, aggregate, spec.describe())
    print(render_aggregate_text(aggregate, spec.describe()), end="")
    for path in written:
        print(f"wrote {path}")
    return 0


def _cmd_synth(args) -> int:
    X, y = planted_signal_data(n_rows=args.rows, seed=args.seed)
    write_synthetic_csv(args.out, X, y)
    print(f"wrote {args.out} ({args.rows} rows, positives {int(y.sum())})")
    return 0


def run(argv: list[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    if args.command == "version":
        print(__version__)
        return 0
    try:
        if args.command == "evaluate":
            return _cmd_evaluate(args)
        if args.command == "report":
            return _cmd_report(args)
        if args.command == "synth":
            return _cmd_synth(args)
    except MethodEvalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return RUNTIME_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return RUNTIME_ERROR
    raise AssertionError("unreachable")


def main() -> None:
    sys.exit(run(sys.argv[1:]))

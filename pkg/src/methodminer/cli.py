"""Command-line front end for the mining pipeline."""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass
from datetime import date

from . import __version__
from .dataset import summary_csv, summary_text, write_csv
from .errors import InvalidDateRange, MethodMinerError
from .human_error import ALERTNESS_BINS, ForgettingCurveParams
from .labeling import KeywordRuleSet
from .pipeline import mine

USAGE_ERROR = 2
PIPELINE_ERROR = 1


@dataclass(frozen=True)
class MineConfig:
    """Validated mining parameters; since/until and curve constants are
    checked at construction."""

    repo_path: str
    since: date
    until: date
    out_path: str | None = None
    keywords_path: str | None = None
    project_name: str | None = None
    log_base: float = 10.0
    curve_c: float = 1.25
    curve_k: float = 1.84

    def __post_init__(self) -> None:
        if self.since > self.until:
            raise InvalidDateRange(
                f"InvalidDateRange: since {self.since} is after until {self.until}"
            )
        if self.curve_c <= 0 or self.curve_k <= 0:
            raise InvalidDateRange("curve constants must be positive")

    def curve(self) -> ForgettingCurveParams:
        return ForgettingCurveParams(c=self.curve_c, k=self.curve_k, log_base=self.log_base)

    def rules(self) -> KeywordRuleSet | None:
        if self.keywords_path is None:
            return None
        return KeywordRuleSet.from_file(self.keywords_path)


def _add_mine_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--repo", required=True, help="path to the Git repository")
    parser.add_argument("--since", required=True, help="window start date, ISO-8601 (inclusive)")
    parser.add_argument("--until", required=True, help="window end date, ISO-8601 (inclusive)")
    parser.add_argument("--keywords", help="file with one bug-fix regex per line ('#' comments)")
    parser.add_argument("--project", help="project name column (default: repo directory name)")
    parser.add_argument(
        "--log-base", choices=["10", "e"], default="10",
        help="logarithm base of the forgetting curve (default 10)",
    )
    parser.add_argument("--curve-c", type=float, default=1.25, help="curve exponent (default 1.25)")
    parser.add_argument("--curve-k", type=float, default=1.84, help="curve scale (default 1.84)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="methodminer",
        description="Mine per-method history, code, and human-factor metrics from a C Git repository.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    mine_p = sub.add_parser("mine", help="run the full pipeline and write the dataset CSV")
    _add_mine_flags(mine_p)
    mine_p.add_argument("--out", required=True, help="output CSV path")

    sum_p = sub.add_parser("summarize", help="mine and print the project summary")
    _add_mine_flags(sum_p)
    sum_p.add_argument("--csv", action="store_true", help="print the one-line CSV form instead of text")

    sub.add_parser("dump-alertness-table", help="print the compiled-in alertness bins")
    sub.add_parser("version", help="print the tool version")
    return parser


def _parse_config(args) -> MineConfig:
    try:
        since = date.fromisoformat(args.since)
        until = date.fromisoformat(args.until)
    except ValueError as exc:
        raise InvalidDateRange(f"bad date: {exc}") from exc
    return MineConfig(
        repo_path=args.repo,
        since=since,
        until=until,
        out_path=getattr(args, "out", None),
        keywords_path=args.keywords,
        project_name=args.project,
        log_base=10.0 if args.log_base == "10" else math.e,
        curve_c=args.curve_c,
        curve_k=args.curve_k,
    )


def _fmt_clock(minute: int) -> str:
    return f"{minute // 60:02d}:{minute % 60:02d}"


def run(argv: list[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    if args.command == "version":
        print(__version__)
        return 0
    if args.command == "dump-alertness-table":
        print("start end   score")
        for start, end, score in ALERTNESS_BINS:
            print(f"{_fmt_clock(start)} {_fmt_clock(end if end < 1440 else 0)} {score:5.1f}")
        return 0

    try:
        config = _parse_config(args)
        rules = config.rules()  # a bad keywords file is a usage problem
    except (InvalidDateRange, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR

    try:
        result = mine(
            config.repo_path,
            config.since,
            config.until,
            project=config.project_name,
            rules=rules,
            curve=config.curve(),
        )
    except MethodMinerError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return PIPELINE_ERROR

    if args.command == "mine":
        try:
            with open(config.out_path, "w", encoding="utf-8", newline="") as fp:
                write_csv(result.rows, fp)
        except OSError as exc:
            print(f"error: cannot write {config.out_path}: {exc}", file=sys.stderr)
            return PIPELINE_ERROR
        print(summary_text(result.summary), end="")
        return 0

    # summarize
    if args.csv:
        print(summary_csv(result.summary), end="")
    else:
        print(summary_text(result.summary), end="")
    return 0


def main() -> None:
    sys.exit(run(sys.argv[1:]))

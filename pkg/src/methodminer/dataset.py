"""Feature-row assembly and the canonical CSV dataset format.

The CSV is UTF-8 with LF line endings and minimal quoting. Integers are
written bare; ratio and score columns carry up to six fractional digits
(round-half-even, no exponent form) so two runs over the same repository
produce byte-identical files.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import date
from typing import Iterable, TextIO

from .attribution import HistoryMetrics, MethodKey
from .cparse import CodeMetrics, MethodSpan
from .errors import KeyMismatch
from .human_error import HEMetrics

CSV_HEADER = (
    "project,file_path,method_name,start_line,end_line,"
    "h1_authors,h2_added_loc,h3_changed_loc,h4_num_changes,h5_added_per_loc,"
    "h6_changed_per_change,h7_added_per_deleted,h8_deleted_loc,h9_deleted_per_loc,"
    "c1_all_lines,c2_code_lines,c3_blank_lines,c4_comment_lines,"
    "e1_memory_decay,e2_alertness,label"
)

# The 15 metric columns, in header order; consumers key metric sets off this.
FEATURE_COLUMNS = CSV_HEADER.split(",")[5:20]


@dataclass(frozen=True)
class MethodSnapshot:
    """A method's last existing version: span plus its code metrics."""

    span: MethodSpan
    metrics: CodeMetrics


@dataclass(frozen=True)
class FeatureRow:
    project: str
    file_path: str
    method_name: str
    start_line: int
    end_line: int
    history: HistoryMetrics
    code: CodeMetrics
    he: HEMetrics
    label: int

    def feature_values(self) -> list[float]:
        h, c, e = self.history, self.code, self.he
        return [
            h.h1_authors, h.h2_added_loc, h.h3_changed_loc, h.h4_num_changes,
            h.h5_added_per_loc, h.h6_changed_per_change, h.h7_added_per_deleted,
            h.h8_deleted_loc, h.h9_deleted_per_loc,
            c.c1_all_lines, c.c2_code_lines, c.c3_blank_lines, c.c4_comment_lines,
            e.e1_memory_decay, e.e2_alertness,
        ]


@dataclass(frozen=True)
class ProjectSummary:
    project: str
    start_date: date
    commits: int
    files: int
    methods: int
    defective_methods: int
    loc: int

    @property
    def defective_pct(self) -> float:
        if self.methods == 0:
            return 0.0
        return 100.0 * self.defective_methods / self.methods


def assemble(
    histories: dict[MethodKey, HistoryMetrics],
    snapshots: dict[MethodKey, MethodSnapshot],
    he_metrics: dict[MethodKey, HEMetrics],
    labels: dict[MethodKey, int],
    project: str,
) -> list[FeatureRow]:
    """One row per known method (the snapshot universe), sorted by
    (file_path, start_line, method_name); methods without history or
    human-error entries get zeros."""
    for name, keys in (("label", labels), ("history", histories), ("human-error", he_metrics)):
        unknown = set(keys) - set(snapshots)
        if unknown:
            raise KeyMismatch(f"{name} entries reference unknown methods: {sorted(unknown)[:3]}")
    rows = []
    for key, snapshot in snapshots.items():
        rows.append(
            FeatureRow(
                project=project,
                file_path=key.file_path,
                method_name=key.method_name,
                start_line=snapshot.span.start_line,
                end_line=snapshot.span.end_line,
                history=histories.get(key, HistoryMetrics()),
                code=snapshot.metrics,
                he=he_metrics.get(key, HEMetrics()),
                label=labels.get(key, 0),
            )
        )
    rows.sort(key=lambda r: (r.file_path, r.start_line, r.method_name))
    return rows


def format_metric(value: float | int) -> str:
    """Integers bare; floats with up to 6 fractional digits, half-even."""
    if isinstance(value, int):
        return str(value)
    text = f"{value:.6f}".rstrip("0")
    if text.endswith("."):
        text += "0"
    return text


def _csv_field(text: str) -> str:
    if any(ch in text for ch in ',"\n\r'):
        return '"' + text.replace('"', '""') + '"'
    return text


def _row_line(row: FeatureRow) -> str:
    h, c, e = row.history, row.code, row.he
    fields = [
        _csv_field(row.project),
        _csv_field(row.file_path),
        _csv_field(row.method_name),
        str(row.start_line),
        str(row.end_line),
        str(h.h1_authors),
        str(h.h2_added_loc),
        str(h.h3_changed_loc),
        str(h.h4_num_changes),
        format_metric(h.h5_added_per_loc),
        format_metric(h.h6_changed_per_change),
        format_metric(h.h7_added_per_deleted),
        str(h.h8_deleted_loc),
        format_metric(h.h9_deleted_per_loc),
        str(c.c1_all_lines),
        str(c.c2_code_lines),
        str(c.c3_blank_lines),
        str(c.c4_comment_lines),
        format_metric(e.e1_memory_decay),
        format_metric(e.e2_alertness),
        str(row.label),
    ]
    return ",".join(fields)


def write_csv(rows: Iterable[FeatureRow], out: TextIO) -> int:
    """Write the dataset; returns the number of UTF-8 bytes written."""
    written = 0
    for line in render_csv_lines(rows):
        out.write(line)
        written += len(line.encode("utf-8"))
    return written


def render_csv_lines(rows: Iterable[FeatureRow]) -> Iterable[str]:
    yield CSV_HEADER + "\n"
    for row in rows:
        yield _row_line(row) + "\n"


def read_csv(fp: TextIO) -> list[FeatureRow]:
    """Round-trip reader for the canonical CSV."""
    import csv

    reader = csv.reader(fp)
    header = next(reader)
    if header != CSV_HEADER.split(","):
        raise ValueError("unexpected dataset header")
    rows = []
    for rec in reader:
        (project, file_path, method_name, start, end,
         h1, h2, h3, h4, h5, h6, h7, h8, h9,
         c1, c2, c3, c4, e1, e2, label) = rec
        rows.append(
            FeatureRow(
                project=project,
                file_path=file_path,
                method_name=method_name,
                start_line=int(start),
                end_line=int(end),
                history=HistoryMetrics(
                    h1_authors=int(h1), h2_added_loc=int(h2), h3_changed_loc=int(h3),
                    h4_num_changes=int(h4), h5_added_per_loc=float(h5),
                    h6_changed_per_change=float(h6), h7_added_per_deleted=float(h7),
                    h8_deleted_loc=int(h8), h9_deleted_per_loc=float(h9),
                ),
                code=CodeMetrics(
                    c1_all_lines=int(c1), c2_code_lines=int(c2),
                    c3_blank_lines=int(c3), c4_comment_lines=int(c4),
                ),
                he=HEMetrics(e1_memory_decay=float(e1), e2_alertness=float(e2)),
                label=int(label),
            )
        )
    return rows


def summarize(
    rows: list[FeatureRow], commits: int, project: str, start_date: date
) -> ProjectSummary:
    return ProjectSummary(
        project=project,
        start_date=start_date,
        commits=commits,
        files=len({r.file_path for r in rows}),
        methods=len(rows),
        defective_methods=sum(r.label for r in rows),
        loc=sum(r.code.c2_code_lines for r in rows),
    )


SUMMARY_CSV_HEADER = "project,start_date,commits,files,methods,defective_methods,loc"


def summary_csv(summary: ProjectSummary) -> str:
    fields = [
        _csv_field(summary.project),
        summary.start_date.isoformat(),
        str(summary.commits),
        str(summary.files),
        str(summary.methods),
        str(summary.defective_methods),
        str(summary.loc),
    ]
    return SUMMARY_CSV_HEADER + "\n" + ",".join(fields) + "\n"


def summary_text(summary: ProjectSummary) -> str:
    lines = [
        f"project            {summary.project}",
        f"start date         {summary.start_date.isoformat()}",
        f"commits            {summary.commits}",
        f"files              {summary.files}",
        f"methods            {summary.methods}",
        f"defective methods  {summary.defective_methods} ({summary.defective_pct:.1f}%)",
        f"loc                {summary.loc}",
    ]
    return "\n".join(lines) + "\n"

"""Mapping diff hunks onto method spans and folding the resulting change
events into per-method history metrics.

Changed lines follow the min-pairing convention: within one hunk, each
method's changed count is min(added inside it, deleted inside it), with the
added and deleted tallies reduced accordingly, then summed across hunks.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from datetime import datetime, timezone

from .errors import EmptyEventList
from .gitrepo import AuthorId, CommitRecord, FileDiff
from .cparse import MethodSpan


@dataclass(frozen=True)
class MethodKey:
    """Join key for one method: the file's path at event time plus name."""

    file_path: str
    method_name: str


@dataclass(frozen=True)
class ChangeEvent:
    key: MethodKey
    commit_id: str
    author: AuthorId
    authored_at: datetime
    added: int
    deleted: int
    changed: int


@dataclass(frozen=True)
class HistoryMetrics:
    h1_authors: int = 0
    h2_added_loc: int = 0
    h3_changed_loc: int = 0
    h4_num_changes: int = 0
    h5_added_per_loc: float = 0.0
    h6_changed_per_change: float = 0.0
    h7_added_per_deleted: float = 0.0
    h8_deleted_loc: int = 0
    h9_deleted_per_loc: float = 0.0


class _SpanIndex:
    """Line number -> method name lookup over non-overlapping spans."""

    def __init__(self, spans: list[MethodSpan]):
        ordered = sorted(spans, key=lambda s: s.start_line)
        self._starts = [s.start_line for s in ordered]
        self._spans = ordered

    def name_at(self, line: int) -> str | None:
        idx = bisect.bisect_right(self._starts, line) - 1
        if idx < 0:
            return None
        span = self._spans[idx]
        if span.start_line <= line <= span.end_line:
            return span.name
        return None


def attribute_changes(
    diff: FileDiff,
    pre_methods: list[MethodSpan],
    post_methods: list[MethodSpan],
    commit: CommitRecord,
) -> list[ChangeEvent]:
    """One ChangeEvent per method touched by this file's hunks.

    Deleted lines are attributed through the parent-side spans and added
    lines through the child-side spans; min-pairing is applied per hunk,
    then per-method tallies are summed over hunks.
    """
    event_path = diff.new_path if diff.new_path is not None else diff.old_path
    pre_index = _SpanIndex(pre_methods)
    post_index = _SpanIndex(post_methods)

    totals: dict[str, list[int]] = {}  # name -> [added, deleted, changed]
    for hunk in diff.hunks:
        added_in: dict[str, int] = {}
        deleted_in: dict[str, int] = {}
        for line in hunk.added_lines:
            name = post_index.name_at(line)
            if name is not None:
                added_in[name] = added_in.get(name, 0) + 1
        for line in hunk.deleted_lines:
            name = pre_index.name_at(line)
            if name is not None:
                deleted_in[name] = deleted_in.get(name, 0) + 1
        for name in added_in.keys() | deleted_in.keys():
            a = added_in.get(name, 0)
            d = deleted_in.get(name, 0)
            ch = min(a, d)
            bucket = totals.setdefault(name, [0, 0, 0])
            bucket[0] += a - ch
            bucket[1] += d - ch
            bucket[2] += ch

    events = []
    for name in sorted(totals):
        added, deleted, changed = totals[name]
        if added + deleted + changed == 0:
            continue
        events.append(
            ChangeEvent(
                key=MethodKey(file_path=event_path, method_name=name),
                commit_id=commit.commit_id,
                author=commit.author,
                authored_at=commit.authored_at,
                added=added,
                deleted=deleted,
                changed=changed,
            )
        )
    return events


def fold_history(events: list[ChangeEvent], final_loc: int) -> HistoryMetrics:
    """Aggregate one method's events; ratios use max(1, denominator)."""
    if not events:
        raise EmptyEventList("fold_history needs at least one event")
    if len({e.key for e in events}) > 1:
        raise ValueError("events for fold_history must share one MethodKey")
    h2 = sum(e.added for e in events)
    h3 = sum(e.changed for e in events)
    h4 = len(events)
    h8 = sum(e.deleted for e in events)
    return HistoryMetrics(
        h1_authors=len({e.author.key for e in events}),
        h2_added_loc=h2,
        h3_changed_loc=h3,
        h4_num_changes=h4,
        h5_added_per_loc=h2 / max(1, final_loc),
        h6_changed_per_change=h3 / max(1, h4),
        h7_added_per_deleted=h2 / max(1, h8),
        h8_deleted_loc=h8,
        h9_deleted_per_loc=h8 / max(1, final_loc),
    )


def fold_history_total(events: list[ChangeEvent], final_loc: int) -> HistoryMetrics:
    """Like fold_history, but a method with zero events gets all zeros."""
    if not events:
        return HistoryMetrics()
    return fold_history(events, final_loc)


def event_sort_key(event: ChangeEvent) -> tuple[datetime, str]:
    """Deterministic stream order: UTC instant, then commit id."""
    return event.authored_at.astimezone(timezone.utc), event.commit_id

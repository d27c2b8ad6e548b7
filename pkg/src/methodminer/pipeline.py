"""End-to-end mining: commits -> method change events -> feature rows.

Commits are processed oldest first. Parsed file revisions are cached by
blob id, method identity is (rename-chased file path, function name), and
every method keeps the span and code metrics of the last revision it
existed in. After the walk, the tree of the last in-window commit is
scanned so never-touched methods appear with all-zero history.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from datetime import date

from . import cparse
from .attribution import (
    ChangeEvent,
    HistoryMetrics,
    MethodKey,
    attribute_changes,
    event_sort_key,
    fold_history_total,
)
from .dataset import FeatureRow, MethodSnapshot, ProjectSummary, assemble, summarize
from .gitrepo import RepoHandle, diff_commit, list_commits, open_repository
from .human_error import (
    DEFAULT_CURVE,
    ForgettingCurveParams,
    HEDiagnostics,
    HEMetrics,
    he_for_events,
)
from .labeling import KeywordRuleSet, is_bugfix, label_methods


@dataclass
class PipelineDiagnostics:
    parse: cparse.ParseDiagnostics = field(default_factory=cparse.ParseDiagnostics)
    he: HEDiagnostics = field(default_factory=HEDiagnostics)


@dataclass
class MineResult:
    rows: list[FeatureRow]
    summary: ProjectSummary
    diagnostics: PipelineDiagnostics


@dataclass
class _ParsedFile:
    classes: list[cparse.LineClass]
    spans: list[cparse.MethodSpan]


class _Miner:
    def __init__(self, repo: RepoHandle, diagnostics: PipelineDiagnostics):
        self.repo = repo
        self.diagnostics = diagnostics
        self._parse_cache: dict[str, _ParsedFile] = {}
        self.events: dict[MethodKey, list[ChangeEvent]] = {}
        self.snapshots: dict[MethodKey, MethodSnapshot] = {}
        self._names_by_path: dict[str, set[str]] = {}

    def parse_revision(self, rev: str, path: str) -> _ParsedFile | None:
        blob = self.repo.read_blob(rev, path)
        if blob is None:
            return None
        oid, text = blob
        cached = self._parse_cache.get(oid)
        if cached is None:
            cached = _ParsedFile(
                classes=cparse.classify_lines(text),
                spans=cparse.extract_methods(text, file_path=path, diagnostics=self.diagnostics.parse),
            )
            self._parse_cache[oid] = cached
        return cached

    def _rekey_path(self, old_path: str, new_path: str) -> None:
        for name in self._names_by_path.pop(old_path, set()):
            old_key = MethodKey(old_path, name)
            new_key = MethodKey(new_path, name)
            if old_key in self.events:
                moved = [replace(e, key=new_key) for e in self.events.pop(old_key)]
                self.events.setdefault(new_key, []).extend(moved)
            if old_key in self.snapshots:
                self.snapshots[new_key] = self.snapshots.pop(old_key)
            self._names_by_path.setdefault(new_path, set()).add(name)

    def _record_snapshot(self, path: str, parsed: _ParsedFile, only_names: set[str] | None = None) -> None:
        for span in parsed.spans:
            if only_names is not None and span.name not in only_names:
                continue
            key = MethodKey(path, span.name)
            self.snapshots[key] = MethodSnapshot(
                span=span, metrics=cparse.code_metrics(span, parsed.classes)
            )
            self._names_by_path.setdefault(path, set()).add(span.name)

    def process_commit(self, commit) -> None:
        parent = commit.parent_ids[0] if commit.parent_ids else None
        for diff in diff_commit(self.repo, commit):
            if (
                diff.is_rename
                and diff.old_path is not None
                and diff.new_path is not None
                and diff.old_path != diff.new_path
            ):
                self._rekey_path(diff.old_path, diff.new_path)

            pre = None
            if diff.old_path is not None and parent is not None:
                pre = self.parse_revision(parent, diff.old_path)
            post = None
            if diff.new_path is not None:
                post = self.parse_revision(commit.commit_id, diff.new_path)

            pre_spans = pre.spans if pre is not None else []
            post_spans = post.spans if post is not None else []
            for event in attribute_changes(diff, pre_spans, post_spans, commit):
                self.events.setdefault(event.key, []).append(event)
                self._names_by_path.setdefault(event.key.file_path, set()).add(
                    event.key.method_name
                )

            event_path = diff.new_path if diff.new_path is not None else diff.old_path
            if pre is not None:
                post_names = {s.name for s in post_spans}
                gone = {s.name for s in pre_spans} - post_names
                if gone:
                    # last existing version of a method deleted by this commit
                    self._record_snapshot(event_path, pre, only_names=gone)
            if post is not None:
                self._record_snapshot(event_path, post)

    def scan_final_tree(self, rev: str) -> None:
        for path in self.repo.list_tree_files(rev):
            parsed = self.parse_revision(rev, path)
            if parsed is not None:
                self._record_snapshot(path, parsed)


def mine(
    repo_path,
    since: date,
    until: date,
    project: str | None = None,
    rules: KeywordRuleSet | None = None,
    curve: ForgettingCurveParams = DEFAULT_CURVE,
) -> MineResult:
    """Run the full pipeline over one repository and window."""
    if rules is None:
        rules = KeywordRuleSet.default()
    if project is None:
        from pathlib import Path

        project = Path(repo_path).resolve().name

    diagnostics = PipelineDiagnostics()
    with open_repository(repo_path) as repo:
        commits = list_commits(repo, since, until)
        bugfix_ids = {c.commit_id for c in commits if is_bugfix(c.message, rules)}

        miner = _Miner(repo, diagnostics)
        for commit in commits:
            miner.process_commit(commit)
        if commits:
            miner.scan_final_tree(commits[-1].commit_id)

        histories: dict[MethodKey, HistoryMetrics] = {}
        he_metrics: dict[MethodKey, HEMetrics] = {}
        all_events: list[ChangeEvent] = []
        for key, events in miner.events.items():
            events.sort(key=event_sort_key)
            final_loc = (
                miner.snapshots[key].metrics.c2_code_lines if key in miner.snapshots else 0
            )
            histories[key] = fold_history_total(events, final_loc)
            he_metrics[key] = he_for_events(events, curve, diagnostics.he)
            all_events.extend(events)

        labels = label_methods(all_events, bugfix_ids, miner.snapshots.keys())
        rows = assemble(histories, miner.snapshots, he_metrics, labels, project)
        summary = summarize(rows, len(commits), project, since)
    return MineResult(rows=rows, summary=summary, diagnostics=diagnostics)

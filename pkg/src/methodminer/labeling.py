"""Bug-fix commit classification and defect labeling of methods.

A commit is a bug fix when any rule pattern matches its full message
(subject and body, case-insensitive); a method is defect-prone when at
least one of its change events belongs to a bug-fix commit.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

from .attribution import ChangeEvent, MethodKey
from .errors import KeyMismatch

DEFAULT_PATTERNS = (
    r"\bfix(es|ed|ing)?\b",
    r"\bbug(s|fix(es)?)?\b",
    r"\bdefect(s)?\b",
    r"\bfault(s|y)?\b",
    r"\brepair(s|ed)?\b",
    r"\bcrash(es|ed)?\b",
)


@dataclass(frozen=True)
class KeywordRuleSet:
    patterns: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.patterns:
            raise ValueError("keyword rule set must not be empty")
        compiled = tuple(re.compile(p, re.IGNORECASE) for p in self.patterns)
        object.__setattr__(self, "_compiled", compiled)

    @staticmethod
    def default() -> "KeywordRuleSet":
        return KeywordRuleSet(DEFAULT_PATTERNS)

    @staticmethod
    def from_lines(lines: Iterable[str]) -> "KeywordRuleSet":
        """One regular expression per line; '#' lines and blanks ignored."""
        patterns = []
        for line in lines:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            patterns.append(line)
        return KeywordRuleSet(tuple(patterns))

    @staticmethod
    def from_file(path: str | Path) -> "KeywordRuleSet":
        text = Path(path).read_text(encoding="utf-8")
        return KeywordRuleSet.from_lines(text.splitlines())


def is_bugfix(message: str, rules: KeywordRuleSet) -> bool:
    return any(p.search(message) for p in rules._compiled)


def label_methods(
    events: Iterable[ChangeEvent],
    bugfix_commits: set[str],
    known_methods: Iterable[MethodKey],
) -> dict[MethodKey, int]:
    """1 for every method touched by a bug-fix commit, 0 for the rest.

    The output keys are exactly the known methods; an event for an unknown
    method is a pipeline inconsistency and raises KeyMismatch.
    """
    labels: dict[MethodKey, int] = {key: 0 for key in known_methods}
    for event in events:
        if event.key not in labels:
            raise KeyMismatch(f"event references unknown method {event.key}")
        if event.commit_id in bugfix_commits:
            labels[event.key] = 1
    return labels

"""Scripted Git repositories used as fixtures.

Every commit carries a controlled author, e-mail, and offset-aware
timestamp so the expected metric values can be computed by hand.
"""

from __future__ import annotations

import os
import subprocess
from pathlib import Path

import pytest

ALICE = ("Alice Dev", "alice@example.com")
BOB = ("Bob Dev", "BOB@example.com")  # mixed case on purpose: must normalize


class RepoScript:
    """Thin wrapper over the git CLI for building throwaway repositories."""

    def __init__(self, root: Path):
        self.root = root
        self.shas: dict[str, str] = {}
        self._git("init", "-q", "-b", "main")
        self._git("config", "user.name", "Fixture")
        self._git("config", "user.email", "fixture@example.com")
        self._git("config", "commit.gpgsign", "false")

    def _git(self, *args: str, env: dict | None = None) -> str:
        full_env = dict(os.environ)
        if env:
            full_env.update(env)
        result = subprocess.run(
            ["git", "-C", str(self.root), *args],
            capture_output=True,
            text=True,
            env=full_env,
        )
        if result.returncode != 0:
            raise RuntimeError(f"git {args} failed: {result.stderr}")
        return result.stdout.strip()

    @staticmethod
    def _ident_env(author: tuple[str, str], when: str) -> dict:
        name, email = author
        return {
            "GIT_AUTHOR_NAME": name,
            "GIT_AUTHOR_EMAIL": email,
            "GIT_AUTHOR_DATE": when,
            "GIT_COMMITTER_NAME": name,
            "GIT_COMMITTER_EMAIL": email,
            "GIT_COMMITTER_DATE": when,
        }

    def write(self, relpath: str, text: str) -> None:
        path = self.root / relpath
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")

    def remove(self, relpath: str) -> None:
        (self.root / relpath).unlink()

    def commit(self, tag: str, message: str, author: tuple[str, str], when: str) -> str:
        self._git("add", "-A")
        self._git("commit", "-q", "--allow-empty", "-m", message, env=self._ident_env(author, when))
        sha = self._git("rev-parse", "HEAD")
        self.shas[tag] = sha
        return sha

    def branch(self, name: str, at: str) -> None:
        self._git("branch", name, self.shas[at])

    def checkout(self, name: str) -> None:
        self._git("checkout", "-q", name)

    def merge(self, tag: str, branch: str, message: str, author: tuple[str, str], when: str) -> str:
        self._git("merge", "-q", "--no-ff", "-m", message, branch, env=self._ident_env(author, when))
        sha = self._git("rev-parse", "HEAD")
        self.shas[tag] = sha
        return sha


MAIN_C_V1 = """\
#include <stdio.h>

static int alpha(int x) {
    return x + 1;
}

int beta(int x) {
    /* doubles the input */
    return 2 * x;
}
"""

UTIL_C_V1 = """\
int gamma(int a, int b) {
    int s = a + b;

    return s;
}
"""


def build_golden_repo(root: Path) -> RepoScript:
    """The hand-computed scenario: 10 commits, 2 authors in 2 time zones,
    3 C methods, 1 bug-fix commit, 1 rename, 1 merge."""
    repo = RepoScript(root)

    repo.write("main.c", MAIN_C_V1)
    repo.commit("c1", "Initial sources", ALICE, "2021-01-05T10:00:00+02:00")

    repo.write("util.c", UTIL_C_V1)
    repo.commit("c2", "Add gamma helper", BOB, "2021-01-06T03:00:00-05:00")

    repo.write("main.c", MAIN_C_V1.replace("return 2 * x;", "return 2 * x + 1;"))
    repo.commit("c3", "Adjust beta result", ALICE, "2021-01-06T12:30:00+02:00")

    main_v3 = (root / "main.c").read_text().replace("return x + 1;", "return x + 2;")
    repo.write("main.c", main_v3)
    repo.commit("c4", "Fix off-by-one in alpha", BOB, "2021-01-07T21:45:00-05:00")

    repo.remove("util.c")
    repo.write("helper.c", UTIL_C_V1.replace("int s = a + b;", "int s = a + b + 0;"))
    repo.commit("c5", "Rename util to helper", ALICE, "2021-01-08T15:00:00+02:00")

    repo.branch("side", at="c2")
    repo.checkout("side")
    repo.write("README.md", "notes\n")
    repo.commit("side", "Notes", BOB, "2021-01-08T12:00:00-05:00")
    repo.checkout("main")
    repo.merge("c6", "side", "Merge side notes", ALICE, "2021-01-09T09:00:00+02:00")

    main_v4 = (root / "main.c").read_text().replace(
        "    /* doubles the input */\n",
        "    /* doubles the input */\n    /* note: fast path */\n",
    )
    repo.write("main.c", main_v4)
    repo.commit("c7", "Document beta fast path", BOB, "2021-01-10T05:45:00-05:00")

    main_v5 = (root / "main.c").read_text().replace("return x + 2;", "return x + 3;")
    repo.write("main.c", main_v5)
    repo.commit("c8", "Polish alpha return value", ALICE, "2021-01-12T10:30:00+02:00")

    helper_v2 = (root / "helper.c").read_text().replace("return s;", "return s + 0;")
    repo.write("helper.c", helper_v2)
    repo.commit("c9", "Tidy gamma return", BOB, "2021-01-12T23:45:00-05:00")

    main_v6 = (root / "main.c").read_text().replace("    /* note: fast path */\n", "")
    repo.write("main.c", main_v6)
    repo.commit("c10", "Trim beta notes", ALICE, "2021-01-15T19:00:00+02:00")

    return repo


@pytest.fixture(scope="session")
def golden_repo(tmp_path_factory) -> RepoScript:
    return build_golden_repo(tmp_path_factory.mktemp("golden"))


@pytest.fixture(scope="session")
def tiny3_repo(tmp_path_factory) -> RepoScript:
    """Three one-file commits on consecutive days."""
    repo = RepoScript(tmp_path_factory.mktemp("tiny3"))
    for day, tag in ((1, "d1"), (2, "d2"), (3, "d3")):
        repo.write("a.c", f"int f(void) {{\n    return {day};\n}}\n")
        repo.commit(tag, f"day {day}", ALICE, f"2022-03-0{day}T12:00:00+00:00")
    return repo

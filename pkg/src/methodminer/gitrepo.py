"""Read-only Git access via the git command line.

Commits are streamed from the default branch's first-parent history with
author timestamps kept in their recorded UTC offset; diffs come from
``git diff-tree`` with rename detection and are parsed into per-hunk line
numbers. Blob contents are fetched through one persistent
``git cat-file --batch`` process.
"""

from __future__ import annotations

import subprocess
import threading
from dataclasses import dataclass
from datetime import date, datetime, timedelta, timezone
from pathlib import Path

from .errors import InvalidDateRange, IoFailure, NotARepository

C_EXTENSIONS = (".c", ".h")


@dataclass(frozen=True)
class AuthorId:
    """Normalized author identity: lowercased e-mail, or name if absent."""

    key: str

    @staticmethod
    def from_signature(name: str, email: str) -> "AuthorId":
        email = email.strip().lower()
        if email:
            return AuthorId(email)
        return AuthorId(name.strip().lower())


@dataclass(frozen=True)
class DiffHunk:
    old_start: int
    old_count: int
    new_start: int
    new_count: int
    added_lines: tuple[int, ...]
    deleted_lines: tuple[int, ...]


@dataclass(frozen=True)
class FileDiff:
    old_path: str | None
    new_path: str | None
    hunks: tuple[DiffHunk, ...]
    is_rename: bool = False


@dataclass(frozen=True)
class CommitRecord:
    commit_id: str
    author: AuthorId
    authored_at: datetime  # offset-aware, never normalized to UTC
    message: str
    is_merge: bool
    parent_ids: tuple[str, ...]


def is_c_file(path: str) -> bool:
    return path.endswith(C_EXTENSIONS)


class RepoHandle:
    """Handle to one repository; safe to share, all access read-only."""

    def __init__(self, path: str | Path):
        self.path = str(path)
        self._batch: subprocess.Popen | None = None
        self._batch_lock = threading.Lock()

    def git(self, *args: str, check: bool = True) -> subprocess.CompletedProcess:
        cmd = ["git", "-C", self.path, "-c", "core.quotePath=false", *args]
        try:
            result = subprocess.run(cmd, capture_output=True, text=False)
        except OSError as exc:
            raise IoFailure(f"cannot run git: {exc}") from exc
        if check and result.returncode != 0:
            stderr = result.stderr.decode("utf-8", errors="replace").strip()
            raise IoFailure(f"git {args[0]} failed: {stderr}")
        return result

    def close(self) -> None:
        with self._batch_lock:
            if self._batch is not None:
                self._batch.stdin.close()
                self._batch.wait()
                self._batch = None

    def __enter__(self) -> "RepoHandle":
        return self

    def __exit__(self, *exc) -> None:
        self.close()

    # -- blob access --------------------------------------------------

    def _ensure_batch(self) -> subprocess.Popen:
        if self._batch is None or self._batch.poll() is not None:
            try:
                self._batch = subprocess.Popen(
                    ["git", "-C", self.path, "cat-file", "--batch"],
                    stdin=subprocess.PIPE,
                    stdout=subprocess.PIPE,
                )
            except OSError as exc:
                raise IoFailure(f"cannot start git cat-file: {exc}") from exc
        return self._batch

    def read_blob(self, rev: str, path: str) -> tuple[str, str] | None:
        """(object id, text) for ``rev:path``, or None if absent.

        Content is decoded as UTF-8 with invalid bytes replaced.
        """
        query = f"{rev}:{path}\n".encode("utf-8")
        with self._batch_lock:
            proc = self._ensure_batch()
            try:
                proc.stdin.write(query)
                proc.stdin.flush()
                header = proc.stdout.readline().decode("utf-8", errors="replace").strip()
                if not header:
                    raise IoFailure("git cat-file terminated unexpectedly")
                parts = header.split()
                if parts[-1] in ("missing", "ambiguous"):
                    return None
                oid, objtype, size = parts[0], parts[1], int(parts[2])
                body = proc.stdout.read(size)
                proc.stdout.read(1)  # trailing LF
            except (OSError, ValueError) as exc:
                raise IoFailure(f"git cat-file failed for {rev}:{path}: {exc}") from exc
        if objtype != "blob":
            return None
        return oid, body.decode("utf-8", errors="replace")

    def list_tree_files(self, rev: str) -> list[str]:
        """All .c/.h blob paths in the tree at rev."""
        result = self.git("ls-tree", "-r", "-z", "--name-only", rev)
        paths = result.stdout.decode("utf-8", errors="replace").split("\0")
        return [p for p in paths if p and is_c_file(p)]


def open_repository(path: str | Path) -> RepoHandle:
    """Open an existing Git repository for reading."""
    p = Path(path)
    if not p.exists():
        raise NotARepository(f"path does not exist: {path}")
    handle = RepoHandle(p)
    result = handle.git("rev-parse", "--git-dir", check=False)
    if result.returncode != 0:
        raise NotARepository(f"not a git repository: {path}")
    return handle


def _utc(dt: datetime) -> datetime:
    return dt.astimezone(timezone.utc)


def list_commits(repo: RepoHandle, since: date, until: date) -> list[CommitRecord]:
    """Non-merge commits of the default branch's first-parent history whose
    author time (taken as a UTC instant) falls in [since 00:00, until 24:00),
    oldest first by (authored_at, commit_id)."""
    if since > until:
        raise InvalidDateRange(f"since {since} is after until {until}")
    head = repo.git("rev-parse", "--verify", "--quiet", "HEAD", check=False)
    if head.returncode != 0:
        return []  # unborn branch: no commits at all

    fmt = "%H%x01%an%x01%ae%x01%aI%x01%P%x01%B%x02"
    result = repo.git("log", "--first-parent", f"--pretty=format:{fmt}", "HEAD")
    text = result.stdout.decode("utf-8", errors="replace")

    lo = datetime.combine(since, datetime.min.time(), tzinfo=timezone.utc)
    hi = datetime.combine(until + timedelta(days=1), datetime.min.time(), tzinfo=timezone.utc)

    records: list[CommitRecord] = []
    for chunk in text.split("\x02"):
        chunk = chunk.lstrip("\n")
        if not chunk.strip():
            continue
        commit_id, name, email, iso, parents, message = chunk.split("\x01", 5)
        authored_at = datetime.fromisoformat(iso)
        parent_ids = tuple(parents.split()) if parents.strip() else ()
        if len(parent_ids) > 1:
            continue  # merge commits are excluded from traversal
        instant = _utc(authored_at)
        if not (lo <= instant < hi):
            continue
        records.append(
            CommitRecord(
                commit_id=commit_id,
                author=AuthorId.from_signature(name, email),
                authored_at=authored_at,
                message=message,
                is_merge=False,
                parent_ids=parent_ids,
            )
        )
    records.sort(key=lambda c: (_utc(c.authored_at), c.commit_id))
    return records


def diff_commit(repo: RepoHandle, commit: CommitRecord) -> list[FileDiff]:
    """Textual diffs of a commit against its single parent (or the empty
    tree for a root commit), restricted to .c/.h files, with renames
    detected at 50% similarity."""
    if len(commit.parent_ids) > 1:
        raise ValueError("diff_commit requires a non-merge commit")
    result = repo.git(
        "diff-tree",
        "--root",
        "--no-commit-id",
        "--find-renames=50%",
        "-r",
        "--unified=0",
        commit.commit_id,
        "--",
        "*.c",
        "*.h",
    )
    text = result.stdout.decode("utf-8", errors="replace")
    return [d for d in map(_keep_diff, parse_patch(text)) if d is not None]


def _keep_diff(diff: FileDiff) -> FileDiff | None:
    """Keep only diffs whose surviving side is a .c/.h file.

    A file leaving the .c/.h universe is dropped; one entering it is kept
    as a pure addition so no stale parent content is parsed.
    """
    old_ok = diff.old_path is not None and is_c_file(diff.old_path)
    new_ok = diff.new_path is not None and is_c_file(diff.new_path)
    if diff.new_path is None:
        return diff if old_ok else None
    if not new_ok:
        return None
    if diff.old_path is not None and not old_ok:
        return FileDiff(old_path=None, new_path=diff.new_path, hunks=diff.hunks, is_rename=False)
    return diff


def _unquote_git_path(path: str) -> str:
    """Undo git's C-style quoting of unusual path names."""
    if not (path.startswith('"') and path.endswith('"') and len(path) >= 2):
        return path
    inner = path[1:-1]
    out = bytearray()
    i = 0
    escapes = {"n": 10, "t": 9, "r": 13, "a": 7, "b": 8, "f": 12, "v": 11, '"': 34, "\\": 92}
    while i < len(inner):
        ch = inner[i]
        if ch == "\\" and i + 1 < len(inner):
            nxt = inner[i + 1]
            if nxt in escapes:
                out.append(escapes[nxt])
                i += 2
                continue
            if nxt.isdigit():  # up to 3 octal digits
                j = i + 1
                digits = ""
                while j < len(inner) and len(digits) < 3 and inner[j] in "01234567":
                    digits += inner[j]
                    j += 1
                out.append(int(digits, 8))
                i = j
                continue
        out.extend(ch.encode("utf-8"))
        i += 1
    return out.decode("utf-8", errors="replace")


def _strip_prefix(path: str, prefix: str) -> str:
    return path[len(prefix):] if path.startswith(prefix) else path


def parse_patch(text: str) -> list[FileDiff]:
    """Parse ``git diff-tree -p`` output into FileDiff records."""
    diffs: list[FileDiff] = []
    cur: dict | None = None
    hunks: list[DiffHunk] = []
    added: list[int] = []
    deleted: list[int] = []
    hunk_header: tuple[int, int, int, int] | None = None
    old_ln = new_ln = 0

    def close_hunk() -> None:
        nonlocal hunk_header
        if hunk_header is not None:
            os, oc, ns, nc = hunk_header
            hunks.append(
                DiffHunk(
                    old_start=os,
                    old_count=oc,
                    new_start=ns,
                    new_count=nc,
                    added_lines=tuple(added),
                    deleted_lines=tuple(deleted),
                )
            )
            added.clear()
            deleted.clear()
            hunk_header = None

    def close_file() -> None:
        nonlocal cur
        close_hunk()
        if cur is not None:
            old_path = cur.get("old")
            new_path = cur.get("new")
            if cur.get("new_file"):
                old_path = None
            if cur.get("deleted_file"):
                new_path = None
            if old_path is not None or new_path is not None:
                diffs.append(
                    FileDiff(
                        old_path=old_path,
                        new_path=new_path,
                        hunks=tuple(hunks),
                        is_rename=bool(cur.get("rename")),
                    )
                )
        hunks.clear()
        cur = None

    for line in text.split("\n"):
        if line.startswith("diff --git "):
            close_file()
            cur = {}
            continue
        if cur is None:
            continue
        if line.startswith("new file mode"):
            cur["new_file"] = True
        elif line.startswith("deleted file mode"):
            cur["deleted_file"] = True
        elif line.startswith("rename from "):
            cur["rename"] = True
            cur["old"] = _unquote_git_path(line[len("rename from "):])
        elif line.startswith("rename to "):
            cur["rename"] = True
            cur["new"] = _unquote_git_path(line[len("rename to "):])
        elif line.startswith("--- "):
            raw = line[4:]
            if raw != "/dev/null":
                cur["old"] = _strip_prefix(_unquote_git_path(raw.rstrip("\t")), "a/")
        elif line.startswith("+++ "):
            raw = line[4:]
            if raw != "/dev/null":
                cur["new"] = _strip_prefix(_unquote_git_path(raw.rstrip("\t")), "b/")
        elif line.startswith("@@"):
            close_hunk()
            header = line.split("@@")[1].strip()
            old_part, new_part = header.split(" ", 1)
            os_, oc = _parse_range(old_part.lstrip("-"))
            ns, nc = _parse_range(new_part.strip().lstrip("+"))
            hunk_header = (os_, oc, ns, nc)
            old_ln, new_ln = os_, ns
        elif hunk_header is not None:
            if line.startswith("+"):
                added.append(new_ln)
                new_ln += 1
            elif line.startswith("-"):
                deleted.append(old_ln)
                old_ln += 1
            elif line.startswith(" "):
                old_ln += 1
                new_ln += 1
            # "\\ No newline at end of file" and blank tails are ignored
    close_file()
    return diffs


def _parse_range(spec: str) -> tuple[int, int]:
    if "," in spec:
        start, count = spec.split(",", 1)
        return int(start), int(count)
    return int(spec), 1

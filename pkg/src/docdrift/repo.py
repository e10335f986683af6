"""Read-only access to on-disk git repositories.

Every operation shells out to the ``git`` executable with an explicit
``--git-dir``, so the worktree and index are never touched. A :class:`Repo`
is safe to share between threads: each call runs its own git process and the
in-memory caches are guarded by a lock.
"""

from __future__ import annotations

import logging
import os
import re
import subprocess
import threading
from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from pathlib import Path

from .errors import (
    AmbiguousPrefix,
    EmptyRepository,
    IoError,
    NotARepository,
    PathNotTracked,
    RevisionUnknown,
)

log = logging.getLogger(__name__)

HASH_RE = re.compile(r"[0-9a-f]{40}\Z")
BINARY_SNIFF_BYTES = 8000
# Upper bound on blob bytes requested from one ``git cat-file --batch`` call.
BATCH_BYTES = 32 * 1024 * 1024


@dataclass(frozen=True, order=True)
class RevisionId:
    hash: str

    def __post_init__(self) -> None:
        if not HASH_RE.match(self.hash):
            raise ValueError(f"not a full lowercase commit hash: {self.hash!r}")

    def __str__(self) -> str:
        return self.hash

    @property
    def short(self) -> str:
        return self.hash[:7]


@dataclass(frozen=True)
class CommitInfo:
    id: RevisionId
    committer_timestamp: int
    subject: str


@dataclass(frozen=True)
class TrackedFile:
    """A blob in a commit tree.

    ``oid`` and ``size`` come straight from the tree listing and let callers
    fetch contents in bulk without a second lookup.
    """

    path: str
    is_text: bool
    oid: str = ""
    size: int = 0


def is_binary(data: bytes) -> bool:
    return b"\0" in data[:BINARY_SNIFF_BYTES]


def _git_env() -> dict[str, str]:
    env = {
        k: v
        for k, v in os.environ.items()
        if not (k.startswith("GIT_") and k not in ("GIT_EXEC_PATH",))
    }
    env.update(
        GIT_OPTIONAL_LOCKS="0",
        GIT_LITERAL_PATHSPECS="1",
        GIT_TERMINAL_PROMPT="0",
        GIT_CONFIG_NOSYSTEM="1",
        LC_ALL="C",
    )
    return env


class Repo:
    """Handle on an opened repository. Create with :func:`open_repo`."""

    def __init__(self, path: Path, git_dir: Path, bare: bool) -> None:
        self.path = path
        self.git_dir = git_dir
        self.bare = bare
        self.warnings: list[str] = []
        self._env = _git_env()
        self._lock = threading.Lock()
        self._text_flags: dict[str, bool] = {}
        self._first_parent_logs: dict[RevisionId, list[CommitInfo]] = {}
        self._shallow: frozenset[str] | None = None

    def __repr__(self) -> str:
        return f"Repo({str(self.path)!r})"

    # -- plumbing ---------------------------------------------------------

    def git(self, *args: str, input: bytes | None = None) -> subprocess.CompletedProcess[bytes]:
        """Run a git command against this repository without raising."""
        return subprocess.run(
            ["git", f"--git-dir={self.git_dir}", "-c", "core.quotepath=false", *args],
            input=input,
            capture_output=True,
            env=self._env,
            cwd=self.git_dir,
        )

    def _git_ok(self, *args: str, input: bytes | None = None) -> bytes:
        proc = self.git(*args, input=input)
        if proc.returncode != 0:
            msg = proc.stderr.decode("utf-8", "replace").strip()
            raise IoError(f"git {args[0]} failed: {msg}")
        return proc.stdout

    def warn(self, message: str) -> None:
        with self._lock:
            if message in self.warnings:
                return
            self.warnings.append(message)
        log.warning(message)

    # -- revisions --------------------------------------------------------

    def resolve_revision(self, revspec: str) -> RevisionId:
        if not revspec or revspec.startswith("-") or "\n" in revspec:
            raise RevisionUnknown(f"invalid revision {revspec!r}")
        proc = self.git("rev-parse", "--verify", f"{revspec}^{{commit}}")
        if proc.returncode != 0:
            err = proc.stderr.decode("utf-8", "replace")
            if "ambiguous" in err:
                raise AmbiguousPrefix(f"short hash {revspec!r} is ambiguous")
            raise RevisionUnknown(f"unknown revision {revspec!r}")
        return RevisionId(proc.stdout.decode().strip())

    def _rev(self, rev: RevisionId | str) -> RevisionId:
        if isinstance(rev, RevisionId):
            return rev
        return self.resolve_revision(rev)

    def commit_info(self, rev: RevisionId | str) -> CommitInfo:
        rev = self._rev(rev)
        out = self._git_ok("show", "-s", "--format=%H%x00%ct%x00%s", rev.hash)
        return _parse_commits(out.rstrip(b"\n") + b"\0")[0]

    def first_parent_log(self, upto: RevisionId | str = "HEAD") -> list[CommitInfo]:
        """Commits on the first-parent chain of ``upto``, newest first."""
        rev = self._rev(upto)
        with self._lock:
            cached = self._first_parent_logs.get(rev)
        if cached is not None:
            return cached
        out = self._git_ok(
            "log", "--first-parent", "-z", "--format=%H%x00%ct%x00%s", rev.hash
        )
        commits = _parse_commits(out)
        with self._lock:
            self._first_parent_logs[rev] = commits
        return commits

    # -- trees and blobs --------------------------------------------------

    def _ls_tree(self, rev: RevisionId, *paths: str) -> list[tuple[str, str, str, int]]:
        args = ["ls-tree", "-z", "-l", "--full-tree"]
        if not paths:
            args.append("-r")
        args.append(rev.hash)
        if paths:
            args += ["--", *paths]
        out = self._git_ok(*args)
        entries = []
        for record in out.split(b"\0"):
            if not record:
                continue
            meta, _, raw_path = record.partition(b"\t")
            _mode, kind, oid, size = meta.split()
            entries.append(
                (
                    raw_path.decode("utf-8", "surrogateescape"),
                    kind.decode(),
                    oid.decode(),
                    int(size) if size != b"-" else 0,
                )
            )
        return entries

    def _blob_entry(self, rev: RevisionId, path: str) -> tuple[str, int]:
        for entry_path, kind, oid, size in self._ls_tree(rev, path):
            if entry_path == path and kind == "blob":
                return oid, size
        raise PathNotTracked(f"{path!r} is not tracked at {rev.short}")

    def iter_blobs(self, items: Iterable[tuple[str, int]]) -> Iterator[tuple[str, bytes]]:
        """Yield ``(oid, content)`` for each ``(oid, size)`` pair, in order.

        Blobs are requested in batches bounded by :data:`BATCH_BYTES`.
        """
        batch: list[str] = []
        total = 0
        for oid, size in items:
            batch.append(oid)
            total += size
            if total >= BATCH_BYTES:
                yield from self._cat_batch(batch)
                batch, total = [], 0
        if batch:
            yield from self._cat_batch(batch)

    def _cat_batch(self, oids: list[str]) -> Iterator[tuple[str, bytes]]:
        out = self._git_ok("cat-file", "--batch", input="".join(o + "\n" for o in oids).encode())
        pos = 0
        for oid in oids:
            eol = out.index(b"\n", pos)
            header = out[pos:eol].split()
            if len(header) != 3:
                raise IoError(f"object {oid} is missing from the object database")
            size = int(header[2])
            start = eol + 1
            yield oid, out[start : start + size]
            pos = start + size + 1

    def list_files(self, rev: RevisionId | str) -> list[TrackedFile]:
        rev = self._rev(rev)
        blobs = [e for e in self._ls_tree(rev) if e[1] == "blob"]
        blobs.sort(key=lambda e: e[0].encode("utf-8", "surrogateescape"))
        with self._lock:
            unknown = {oid: size for _, _, oid, size in blobs if oid not in self._text_flags}
        flags = {}
        for oid, data in self.iter_blobs(unknown.items()):
            flags[oid] = not is_binary(data)
        with self._lock:
            self._text_flags.update(flags)
            known = dict(self._text_flags)
        return [TrackedFile(path, known[oid], oid, size) for path, _, oid, size in blobs]

    def read_file(self, rev: RevisionId | str, path: str) -> bytes:
        rev = self._rev(rev)
        oid, _ = self._blob_entry(rev, path)
        return self._git_ok("cat-file", "blob", oid)

    def is_tracked(self, rev: RevisionId | str, path: str) -> bool:
        try:
            self._blob_entry(self._rev(rev), path)
        except PathNotTracked:
            return False
        return True

    # -- history ----------------------------------------------------------

    def _shallow_commits(self) -> frozenset[str]:
        if self._shallow is None:
            shallow_path = self._git_ok("rev-parse", "--git-path", "shallow").decode().strip()
            p = Path(shallow_path)
            if not p.is_absolute():
                p = self.git_dir / p
            try:
                self._shallow = frozenset(p.read_text().split())
            except FileNotFoundError:
                self._shallow = frozenset()
        return self._shallow

    def last_modifying_commit(self, upto: RevisionId | str, path: str) -> CommitInfo:
        rev = self._rev(upto)
        self._blob_entry(rev, path)
        out = self._git_ok(
            "log", "--first-parent", "--no-renames", "-z", "-n1",
            "--format=%H%x00%ct%x00%s", rev.hash, "--", path,
        )
        found = _parse_commits(out)
        if not found:
            oldest = self.first_parent_log(rev)[-1]
            self.warn(
                f"history of {path} is truncated; using oldest available commit {oldest.id.short}"
            )
            return oldest
        commit = found[0]
        if commit.id.hash in self._shallow_commits():
            self.warn(
                f"history of {path} is truncated at shallow commit {commit.id.short}; "
                "fetch full history for accurate snapshots"
            )
        return commit

    def commit_at_or_before(self, timestamp: int, upto: RevisionId | str = "HEAD") -> CommitInfo:
        """Latest first-parent ancestor of ``upto`` committed at or before ``timestamp``.

        Equal timestamps resolve to the descendant. Falls back to the root of
        the chain when every commit is newer.
        """
        try:
            chain = self.first_parent_log(upto)
        except RevisionUnknown:
            if upto == "HEAD":
                raise EmptyRepository(f"{self.path} has no commits") from None
            raise
        best = None
        for commit in chain:
            if commit.committer_timestamp <= timestamp and (
                best is None or commit.committer_timestamp > best.committer_timestamp
            ):
                best = commit
        return best if best is not None else chain[-1]


def _parse_commits(out: bytes) -> list[CommitInfo]:
    fields = out.split(b"\0")
    commits = []
    for i in range(0, len(fields) - 2, 3):
        sha, ts, subject = fields[i : i + 3]
        sha = sha.strip()
        if not sha:
            continue
        commits.append(
            CommitInfo(
                RevisionId(sha.decode()),
                int(ts),
                subject.decode("utf-8", "replace"),
            )
        )
    return commits


def open_repo(path: str | os.PathLike[str]) -> Repo:
    """Open the repository rooted at ``path`` (worktree or bare).

    Discovery never climbs into parent directories: a subdirectory of a
    worktree is not a repository.
    """
    p = Path(path)
    if not p.exists():
        raise IoError(f"{p}: no such file or directory")
    if not p.is_dir():
        raise NotARepository(f"{p} is not a directory")
    if not os.access(p, os.R_OK | os.X_OK):
        raise IoError(f"{p}: permission denied")
    p = p.resolve()
    env = _git_env()
    env["GIT_CEILING_DIRECTORIES"] = str(p.parent)
    proc = subprocess.run(
        ["git", "rev-parse", "--is-bare-repository", "--is-inside-git-dir", "--absolute-git-dir"],
        cwd=p,
        capture_output=True,
        env=env,
    )
    if proc.returncode != 0:
        raise NotARepository(f"{p} is not a git repository")
    bare, inside_git_dir, git_dir = proc.stdout.decode().split("\n")[:3]
    git_dir_path = Path(git_dir).resolve()
    if bare == "true" or inside_git_dir == "true":
        if git_dir_path != p:
            raise NotARepository(f"{p} is not a git repository")
        return Repo(p, git_dir_path, bare=True)
    top = subprocess.run(
        ["git", "rev-parse", "--show-toplevel"], cwd=p, capture_output=True, env=env
    )
    if top.returncode != 0 or Path(top.stdout.decode().strip()).resolve() != p:
        raise NotARepository(f"{p} is not the top of a git worktree")
    return Repo(p, git_dir_path, bare=False)


# Module-level aliases mirroring the method API.

def resolve_revision(repo: Repo, revspec: str) -> RevisionId:
    return repo.resolve_revision(revspec)


def list_files(repo: Repo, rev: RevisionId | str) -> list[TrackedFile]:
    return repo.list_files(rev)


def read_file(repo: Repo, rev: RevisionId | str, path: str) -> bytes:
    return repo.read_file(rev, path)


def last_modifying_commit(repo: Repo, upto: RevisionId | str, path: str) -> CommitInfo:
    return repo.last_modifying_commit(upto, path)


def commit_at_or_before(repo: Repo, timestamp: int, upto: RevisionId | str = "HEAD") -> CommitInfo:
    return repo.commit_at_or_before(timestamp, upto)

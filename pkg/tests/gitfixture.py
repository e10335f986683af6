"""Build deterministic git repositories for tests via ``git fast-import``.

The builder keeps a Python-side model of every commit (tree contents,
parents, timestamp) so history oracles can be computed without asking git.
"""

from __future__ import annotations

import hashlib
import os
import random
import subprocess
from dataclasses import dataclass, field
from pathlib import Path

GIT_ENV = {
    **{k: v for k, v in os.environ.items() if not k.startswith("GIT_")},
    "GIT_CONFIG_NOSYSTEM": "1",
    "GIT_CONFIG_GLOBAL": os.devnull,
    "LC_ALL": "C",
    "GIT_AUTHOR_NAME": "Test",
    "GIT_AUTHOR_EMAIL": "test@example.com",
    "GIT_COMMITTER_NAME": "Test",
    "GIT_COMMITTER_EMAIL": "test@example.com",
}


def git(cwd: Path, *args: str, input: bytes | None = None) -> str:
    proc = subprocess.run(
        ["git", *args], cwd=cwd, input=input, capture_output=True, env=GIT_ENV, check=True
    )
    return proc.stdout.decode()


@dataclass
class ModelCommit:
    mark: int
    tree: dict[str, bytes]
    parents: list[int]
    timestamp: int
    message: str
    hash: str = ""


@dataclass
class RepoBuilder:
    """Accumulate commits, then :meth:`build` them into a repository.

    ``commit`` takes the *changes* relative to the first parent: a mapping of
    path to bytes (``None`` deletes the path). Branch heads are tracked by
    name; the first branch becomes HEAD.
    """

    path: Path
    bare: bool = False
    commits: list[ModelCommit] = field(default_factory=list)
    heads: dict[str, int] = field(default_factory=dict)
    head_branch: str = "main"

    def commit(
        self,
        changes: dict[str, bytes | str | None],
        timestamp: int,
        message: str = "",
        branch: str = "main",
        parent: int | None = None,
        merge: int | None = None,
    ) -> int:
        """Record a commit and return its mark (1-based index)."""
        first = parent if parent is not None else self.heads.get(branch)
        tree = dict(self.commits[first - 1].tree) if first else {}
        for path, data in changes.items():
            if data is None:
                tree.pop(path, None)
            else:
                tree[path] = data.encode() if isinstance(data, str) else data
        mark = len(self.commits) + 1
        parents = [p for p in (first, merge) if p]
        self.commits.append(
            ModelCommit(mark, tree, parents, timestamp, message or f"commit {mark}")
        )
        self.heads[branch] = mark
        return mark

    def _stream(self) -> bytes:
        out = bytearray()
        for c in self.commits:
            msg = c.message.encode()
            out += f"commit refs/fixture/c{c.mark}\nmark :{c.mark}\n".encode()
            out += f"committer Test <test@example.com> {c.timestamp} +0000\n".encode()
            out += b"data %d\n%s\n" % (len(msg), msg)
            if c.parents:
                out += f"from :{c.parents[0]}\n".encode()
            for p in c.parents[1:]:
                out += f"merge :{p}\n".encode()
            out += b"deleteall\n"
            for path in sorted(c.tree):
                data = c.tree[path]
                out += f"M 100644 inline {path}\n".encode()
                out += b"data %d\n%s\n" % (len(data), data)
            out += b"\n"
        for branch, mark in self.heads.items():
            out += f"reset refs/heads/{branch}\nfrom :{mark}\n\n".encode()
        return bytes(out)

    def build(self) -> Path:
        self.path.mkdir(parents=True, exist_ok=True)
        init = ["init", "-q", "-b", self.head_branch]
        if self.bare:
            init.append("--bare")
        git(self.path, *init)
        if self.commits:
            marks = self.path / ".marks"
            git(self.path, "fast-import", "--quiet", f"--export-marks={marks}", input=self._stream())
            for line in marks.read_text().splitlines():
                mark, sha = line.split()
                self.commits[int(mark[1:]) - 1].hash = sha
            marks.unlink()
            refs = git(self.path, "for-each-ref", "--format=delete %(refname)", "refs/fixture")
            git(self.path, "update-ref", "--stdin", input=refs.encode())
            if not self.bare:
                git(self.path, "reset", "-q", "--hard", self.head_branch)
        return self.path

    def hash(self, mark: int) -> str:
        return self.commits[mark - 1].hash

    # -- oracles over the model -------------------------------------------

    def first_parent_chain(self, mark: int) -> list[ModelCommit]:
        chain = []
        while mark:
            c = self.commits[mark - 1]
            chain.append(c)
            mark = c.parents[0] if c.parents else 0
        return chain

    def oracle_last_modifying(self, upto: int, path: str) -> ModelCommit:
        for c in self.first_parent_chain(upto):
            parent_tree = self.commits[c.parents[0] - 1].tree if c.parents else {}
            if c.tree.get(path) != parent_tree.get(path):
                return c
        raise AssertionError("path not tracked")

    def oracle_commit_at_or_before(self, timestamp: int, upto: int) -> ModelCommit:
        chain = self.first_parent_chain(upto)
        eligible = [c for c in chain if c.timestamp <= timestamp]
        if not eligible:
            return chain[-1]
        best = max(c.timestamp for c in eligible)
        return next(c for c in chain if c.timestamp == best)


def hash_tree(root: Path) -> dict[str, str]:
    """Content digest of every file under ``root`` (for read-only checks)."""
    digests = {}
    for p in sorted(root.rglob("*")):
        if p.is_file():
            digests[str(p.relative_to(root))] = hashlib.sha256(p.read_bytes()).hexdigest()
    return digests


def random_history(b: RepoBuilder, rng: random.Random) -> None:
    """5 to 15 commits over a few paths, with side branches, merges and clock skew."""
    paths = ["README.md", "a.py", "docs/guide.md", "b.txt"]
    n = rng.randint(5, 15)
    b.commit({p: f"{p} 0\n" for p in paths[:2]}, rng.randint(1000, 5000))
    while len(b.commits) < n:
        changes = {}
        for p in rng.sample(paths, rng.randint(0, 3)):
            changes[p] = None if rng.random() < 0.15 else f"{p} {rng.randint(0, 3)}\n"
        ts = rng.randint(1000, 5000)
        roll = rng.random()
        if roll < 0.2:
            b.commit(changes, ts, branch="side", parent=rng.choice(range(1, len(b.commits) + 1)))
        elif roll < 0.35 and "side" in b.heads:
            b.commit(changes, ts, merge=b.heads["side"])
        else:
            b.commit(changes, ts)
    # keep HEAD's tree non-empty so there is always a path to query
    head_tree = b.commits[b.heads["main"] - 1].tree
    if not head_tree:
        b.commit({"README.md": "final\n"}, rng.randint(1000, 5000))

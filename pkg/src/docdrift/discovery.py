"""Find README and wiki pages and pin each to a main-repository snapshot."""

from __future__ import annotations

import enum
import posixpath
from dataclasses import dataclass

from .repo import CommitInfo, Repo, RevisionId

README_EXTENSIONS = frozenset({"", ".md", ".markdown", ".txt"})
WIKI_EXTENSIONS = frozenset({".md", ".markdown"})


class Origin(enum.Enum):
    MAIN = "Main"
    WIKI = "Wiki"


@dataclass(frozen=True)
class DocFile:
    path: str
    origin: Origin
    last_modified: CommitInfo
    snapshot: RevisionId

    @property
    def display_path(self) -> str:
        """Path as shown in reports; wiki pages get a ``wiki/`` prefix."""
        return f"wiki/{self.path}" if self.origin is Origin.WIKI else self.path


def is_documentation_path(path: str, origin: Origin = Origin.MAIN) -> bool:
    name = posixpath.basename(path)
    stem, ext = posixpath.splitext(name)
    if origin is Origin.WIKI:
        return bool(stem) and ext.lower() in WIKI_EXTENSIONS
    return stem.lower() == "readme" and ext.lower() in README_EXTENSIONS


def discover_docs(
    main: Repo, current: RevisionId | str, wiki: Repo | None = None
) -> list[DocFile]:
    """List documentation files, main repository first, then wiki pages.

    Wiki pages have no commits in the main repository, so each one is mapped
    to the newest first-parent ancestor of ``current`` committed no later
    than the page's last edit.
    """
    current = main.resolve_revision(current) if isinstance(current, str) else current
    docs = []
    for f in main.list_files(current):
        if f.is_text and is_documentation_path(f.path):
            last = main.last_modifying_commit(current, f.path)
            docs.append(DocFile(f.path, Origin.MAIN, last, last.id))
    if wiki is not None:
        wiki_head = wiki.resolve_revision("HEAD")
        for f in wiki.list_files(wiki_head):
            if f.is_text and is_documentation_path(f.path, Origin.WIKI):
                last = wiki.last_modifying_commit(wiki_head, f.path)
                mapped = main.commit_at_or_before(last.committer_timestamp, current)
                docs.append(DocFile(f.path, Origin.WIKI, last, mapped.id))
    return docs

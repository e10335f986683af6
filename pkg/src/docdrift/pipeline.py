"""End-to-end scan: discover docs, extract, match, exclude, report."""

from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path

from .discovery import Origin, discover_docs
from .errors import RevisionUnknown
from .extraction import extract_references
from .matching import evaluate_references
from .reporting import ScanReport, apply_exclusions, load_exclude_list, read_exclude_file
from .repo import Repo, open_repo


@dataclass
class ScanConfig:
    repo_path: str | os.PathLike[str]
    wiki_path: str | os.PathLike[str] | None = None
    current_revspec: str = "HEAD"
    output_dir: str | os.PathLike[str] = "output"
    exclude_file_override: str | os.PathLike[str] | None = None
    workers: int = 1
    fail_on_outdated: bool = False
    repo_slug: str | None = None
    run_id: str | None = None

    def __post_init__(self) -> None:
        if self.workers < 1:
            raise ValueError("workers must be >= 1")


def _open_wiki(path: str | os.PathLike[str], main: Repo) -> Repo | None:
    wiki = open_repo(path)
    try:
        wiki.resolve_revision("HEAD")
    except RevisionUnknown:
        main.warn(f"wiki at {path} has no commits; skipping wiki pages")
        return None
    return wiki


def scan(config: ScanConfig) -> ScanReport:
    main = open_repo(config.repo_path)
    wiki = _open_wiki(config.wiki_path, main) if config.wiki_path is not None else None
    current = main.resolve_revision(config.current_revspec)
    wiki_head = wiki.resolve_revision("HEAD") if wiki is not None else None

    items = []
    for doc in discover_docs(main, current, wiki):
        if doc.origin is Origin.WIKI:
            data = wiki.read_file(wiki_head, doc.path)
        else:
            data = main.read_file(current, doc.path)
        for ref in extract_references(doc, data.decode("utf-8", "replace")):
            items.append((ref, doc.snapshot))

    verdicts = evaluate_references(main, items, current, config.workers)
    if config.exclude_file_override is not None:
        excludes = read_exclude_file(config.exclude_file_override)
    else:
        excludes = load_exclude_list(main, current)
    warnings = list(main.warnings)
    if wiki is not None:
        warnings += [w for w in wiki.warnings if w not in warnings]
    return ScanReport.build(
        current,
        apply_exclusions(verdicts, excludes),
        repo_slug=config.repo_slug,
        run_id=config.run_id,
        warnings=warnings,
    )


def prepare_output_dir(path: str | os.PathLike[str]) -> Path:
    out = Path(path)
    out.mkdir(parents=True, exist_ok=True)
    return out

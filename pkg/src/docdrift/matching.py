"""Count anchors in the source tree and classify references."""

from __future__ import annotations

import enum
import posixpath
import re
import threading
from collections.abc import Iterable, Sequence
from concurrent.futures import Future, ThreadPoolExecutor
from dataclasses import dataclass, field

from . import kernel
from .discovery import is_documentation_path
from .extraction import CodeElementReference
from .repo import BATCH_BYTES, Repo, RevisionId

EXCLUDE_FILE = ".DOCER_exclude"
MARKDOWN_EXTENSIONS = frozenset({".md", ".markdown"})

_WORD_RUN = re.compile(rb"[A-Za-z0-9_]+")
_ANCHOR = re.compile(r"[A-Za-z0-9_](?:[A-Za-z0-9_.]*[A-Za-z0-9_])?\Z")


class Classification(enum.Enum):
    OUTDATED = "Outdated"
    PRESENT = "Present"
    NEVER_FOUND = "NeverFound"
    EXCLUDED = "Excluded"


@dataclass(frozen=True)
class SourceSet:
    revision: RevisionId
    files: tuple[str, ...]
    blobs: tuple[tuple[str, int], ...] = field(default=(), repr=False)


@dataclass(frozen=True)
class ReferenceVerdict:
    reference: CodeElementReference
    snapshot: RevisionId
    current: RevisionId
    snapshot_count: int
    current_count: int
    classification: Classification


def classify(snapshot_count: int, current_count: int) -> Classification:
    if current_count > 0:
        return Classification.PRESENT
    if snapshot_count > 0:
        return Classification.OUTDATED
    return Classification.NEVER_FOUND


def is_source_path(path: str) -> bool:
    if path == EXCLUDE_FILE or is_documentation_path(path):
        return False
    return posixpath.splitext(path)[1].lower() not in MARKDOWN_EXTENSIONS


def build_source_set(repo: Repo, rev: RevisionId | str) -> SourceSet:
    rev = repo.resolve_revision(rev) if isinstance(rev, str) else rev
    kept = [f for f in repo.list_files(rev) if f.is_text and is_source_path(f.path)]
    return SourceSet(rev, tuple(f.path for f in kept), tuple((f.oid, f.size) for f in kept))


def check_anchor(anchor: str) -> bytes:
    if not _ANCHOR.match(anchor):
        raise ValueError(f"invalid anchor {anchor!r}")
    return anchor.encode("ascii")


class OccurrenceCounter:
    """Count a fixed set of anchors over source sets of one repository.

    Each distinct blob is read and scanned once; the per-blob results are
    reused for every source set that contains it. ``workers`` threads scan
    blobs concurrently (the compiled kernel releases the GIL).
    """

    def __init__(self, repo: Repo, anchors: Iterable[str], workers: int = 1) -> None:
        if workers < 1:
            raise ValueError("workers must be >= 1")
        self.repo = repo
        self.workers = workers
        self.anchors = sorted(set(anchors))
        self._encoded = [check_anchor(a) for a in self.anchors]
        self._by_head: dict[bytes, list[int]] = {}
        for i, enc in enumerate(self._encoded):
            self._by_head.setdefault(enc.split(b".", 1)[0], []).append(i)
        self._blob_counts: dict[str, dict[int, int]] = {}
        self._lock = threading.Lock()

    def _scan_blob(self, data: bytes) -> dict[int, int]:
        words = set(_WORD_RUN.findall(data))
        candidates = [i for head, idx in self._by_head.items() if head in words for i in idx]
        if not candidates:
            return {}
        counts = kernel.count_anchors(data, [self._encoded[i] for i in candidates])
        return {i: c for i, c in zip(candidates, counts) if c}

    def _fill(self, blobs: Sequence[tuple[str, int]]) -> None:
        with self._lock:
            todo = {oid: size for oid, size in blobs if oid not in self._blob_counts}
        if not todo or not self._encoded:
            return
        results: dict[str, dict[int, int]] = {}
        if self.workers == 1:
            for oid, data in self.repo.iter_blobs(todo.items()):
                results[oid] = self._scan_blob(data)
        else:
            with ThreadPoolExecutor(max_workers=self.workers) as pool:
                pending: list[tuple[str, Future[dict[int, int]]]] = []
                pending_bytes = 0
                for oid, data in self.repo.iter_blobs(todo.items()):
                    pending.append((oid, pool.submit(self._scan_blob, data)))
                    pending_bytes += len(data)
                    if pending_bytes >= BATCH_BYTES:
                        results.update((o, f.result()) for o, f in pending)
                        pending, pending_bytes = [], 0
                results.update((o, f.result()) for o, f in pending)
        with self._lock:
            self._blob_counts.update(results)

    def totals(self, source: SourceSet) -> dict[str, int]:
        self._fill(source.blobs)
        sums = [0] * len(self.anchors)
        for oid, _ in source.blobs:
            for i, c in self._blob_counts.get(oid, {}).items():
                sums[i] += c
        return dict(zip(self.anchors, sums))


def count_occurrences(repo: Repo, source: SourceSet, anchor: str, workers: int = 1) -> int:
    return OccurrenceCounter(repo, [anchor], workers).totals(source)[anchor]


def evaluate_reference(
    ref: CodeElementReference, repo: Repo, snapshot: RevisionId, current: RevisionId
) -> ReferenceVerdict:
    return evaluate_references(repo, [(ref, snapshot)], current)[0]


def evaluate_references(
    repo: Repo,
    items: Sequence[tuple[CodeElementReference, RevisionId]],
    current: RevisionId,
    workers: int = 1,
) -> list[ReferenceVerdict]:
    """Evaluate many references at once, sharing blob reads between revisions.

    Returns verdicts in the order of ``items``. The result equals calling
    :func:`evaluate_reference` on each item.
    """
    counter = OccurrenceCounter(repo, (ref.anchor for ref, _ in items), workers)
    sources: dict[RevisionId, SourceSet] = {}

    def totals_at(rev: RevisionId) -> dict[str, int]:
        if rev not in sources:
            sources[rev] = build_source_set(repo, rev)
        return counter.totals(sources[rev])

    current_totals = totals_at(current)
    snapshot_totals = {snap: totals_at(snap) for snap in sorted({s for _, s in items})}
    verdicts = []
    for ref, snap in items:
        before = snapshot_totals[snap][ref.anchor]
        after = current_totals[ref.anchor]
        verdicts.append(
            ReferenceVerdict(ref, snap, current, before, after, classify(before, after))
        )
    return verdicts

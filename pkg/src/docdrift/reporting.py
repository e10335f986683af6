"""Exclusions, the scan report, and its on-disk formats."""

from __future__ import annotations

import os
import tempfile
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field, replace
from pathlib import Path

from .errors import IoError
from .matching import EXCLUDE_FILE, Classification, ReferenceVerdict
from .repo import Repo, RevisionId

REPORT_HEADER = (
    "doc_path", "line", "raw", "anchor", "context", "recognizer",
    "snapshot_commit", "snapshot_count", "current_count", "classification",
)
SUMMARY_HEADER = ("doc_path", "anchor", "snapshot_commit")
SUMMARY_HEADING = "## Potentially outdated references"

REPORT_CSV = "report.csv"
SUMMARY_CSV = "summary.csv"
SUMMARY_MD = "summary.md"
COMMENT_MD = "comment.md"


@dataclass(frozen=True)
class ExcludeList:
    entries: tuple[str, ...] = ()

    @classmethod
    def parse(cls, text: str) -> ExcludeList:
        seen: dict[str, None] = {}
        for line in text.split("\n"):
            entry = line.strip()
            if entry:
                seen.setdefault(entry, None)
        return cls(tuple(seen))

    @classmethod
    def from_bytes(cls, data: bytes) -> ExcludeList:
        return cls.parse(data.decode("utf-8-sig", "replace"))

    def __contains__(self, item: object) -> bool:
        return item in self.entries

    def matches(self, verdict: ReferenceVerdict) -> bool:
        ref = verdict.reference
        return ref.anchor in self.entries or ref.raw in self.entries


def load_exclude_list(repo: Repo, rev: RevisionId | str) -> ExcludeList:
    if not repo.is_tracked(rev, EXCLUDE_FILE):
        return ExcludeList()
    return ExcludeList.from_bytes(repo.read_file(rev, EXCLUDE_FILE))


def read_exclude_file(path: str | os.PathLike[str]) -> ExcludeList:
    try:
        return ExcludeList.from_bytes(Path(path).read_bytes())
    except OSError as exc:
        raise IoError(f"cannot read exclude file {path}: {exc.strerror}") from exc


def apply_exclusions(rows: Sequence[ReferenceVerdict], ex: ExcludeList) -> list[ReferenceVerdict]:
    return [
        replace(row, classification=Classification.EXCLUDED) if ex.matches(row) else row
        for row in rows
    ]


def _row_key(v: ReferenceVerdict) -> tuple[str, int, str]:
    return (v.reference.doc_path, v.reference.line, v.reference.anchor)


@dataclass(frozen=True)
class ScanReport:
    current: RevisionId
    rows: tuple[ReferenceVerdict, ...]
    repo_slug: str | None = None
    run_id: str | None = None
    warnings: tuple[str, ...] = field(default=())

    @classmethod
    def build(
        cls,
        current: RevisionId,
        rows: Iterable[ReferenceVerdict],
        repo_slug: str | None = None,
        run_id: str | None = None,
        warnings: Iterable[str] = (),
    ) -> ScanReport:
        return cls(current, tuple(sorted(rows, key=_row_key)), repo_slug, run_id, tuple(warnings))

    def count(self, classification: Classification) -> int:
        return sum(1 for r in self.rows if r.classification is classification)

    @property
    def outdated(self) -> list[ReferenceVerdict]:
        return [r for r in self.rows if r.classification is Classification.OUTDATED]


def _atomic_write(path: Path, text: str) -> None:
    path = Path(path)
    try:
        fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc.strerror}") from exc
    try:
        with os.fdopen(fd, "w", encoding="utf-8", errors="surrogateescape", newline="") as fh:
            fh.write(text)
        os.chmod(tmp, 0o644)
        os.replace(tmp, path)
    except OSError as exc:
        Path(tmp).unlink(missing_ok=True)
        raise IoError(f"cannot write {path}: {exc.strerror}") from exc
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise


def _csv_field(value: object) -> str:
    # csv.writer leaves a lone CR unquoted when the line terminator is LF
    text = str(value)
    if any(c in text for c in ',"\r\n'):
        return '"' + text.replace('"', '""') + '"'
    return text


def _csv_text(header: Sequence[str], rows: Iterable[Sequence[object]]) -> str:
    lines = [",".join(map(_csv_field, row)) for row in (header, *rows)]
    return "".join(line + "\n" for line in lines)


def report_csv_text(report: ScanReport) -> str:
    return _csv_text(
        REPORT_HEADER,
        (
            (
                v.reference.doc_path,
                v.reference.line,
                v.reference.raw,
                v.reference.anchor,
                v.reference.context.value,
                v.reference.recognizer.value,
                v.snapshot.hash,
                v.snapshot_count,
                v.current_count,
                v.classification.value,
            )
            for v in report.rows
        ),
    )


def summary_csv_text(report: ScanReport) -> str:
    return _csv_text(
        SUMMARY_HEADER,
        ((v.reference.doc_path, v.reference.anchor, v.snapshot.hash) for v in report.outdated),
    )


def _cell(text: str) -> str:
    return text.replace("|", "\\|")


def summary_md_text(report: ScanReport) -> str:
    lines = [SUMMARY_HEADING]
    outdated = report.outdated
    if outdated:
        lines += ["", "| Documentation | Code element | Last seen in |", "| --- | --- | --- |"]
        lines += [
            f"| {_cell(v.reference.doc_path)} | `{v.reference.anchor}` | {v.snapshot.short} |"
            for v in outdated
        ]
    return "\n".join(lines) + "\n"


def render_pr_comment(report: ScanReport) -> str:
    """Body for the pull-request comment; empty when nothing is outdated."""
    if not report.outdated:
        return ""
    body = summary_md_text(report)
    if report.repo_slug and report.run_id:
        body += (
            f"\nFull report: https://github.com/{report.repo_slug}"
            f"/actions/runs/{report.run_id}\n"
        )
    return body


def write_report_csv(report: ScanReport, path: str | os.PathLike[str]) -> Path:
    path = Path(path)
    _atomic_write(path, report_csv_text(report))
    return path


def write_summary(report: ScanReport, directory: str | os.PathLike[str]) -> tuple[Path, Path]:
    directory = Path(directory)
    csv_path, md_path = directory / SUMMARY_CSV, directory / SUMMARY_MD
    _atomic_write(csv_path, summary_csv_text(report))
    _atomic_write(md_path, summary_md_text(report))
    return csv_path, md_path


def write_comment(report: ScanReport, directory: str | os.PathLike[str]) -> Path:
    path = Path(directory) / COMMENT_MD
    _atomic_write(path, render_pr_comment(report))
    return path


def write_outputs(report: ScanReport, directory: str | os.PathLike[str]) -> list[Path]:
    directory = Path(directory)
    return [
        write_report_csv(report, directory / REPORT_CSV),
        *write_summary(report, directory),
        write_comment(report, directory),
    ]

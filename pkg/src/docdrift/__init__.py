"""Detect outdated code-element references in README and wiki pages."""

from .discovery import DocFile, Origin, discover_docs, is_documentation_path
from .errors import (
    AmbiguousPrefix,
    DocDriftError,
    EmptyRepository,
    IoError,
    NotARepository,
    PathNotTracked,
    RevisionUnknown,
)
from .extraction import (
    CodeElementReference,
    Recognizer,
    Segment,
    SegmentKind,
    extract_references,
    segment_markdown,
)
from .matching import (
    Classification,
    ReferenceVerdict,
    SourceSet,
    build_source_set,
    count_occurrences,
    evaluate_reference,
    evaluate_references,
)
from .pipeline import ScanConfig, scan
from .reporting import (
    ExcludeList,
    ScanReport,
    apply_exclusions,
    load_exclude_list,
    render_pr_comment,
    write_outputs,
    write_report_csv,
    write_summary,
)
from .repo import CommitInfo, Repo, RevisionId, TrackedFile, open_repo

__version__ = "0.1.0"

__all__ = [
    "AmbiguousPrefix", "Classification", "CodeElementReference", "CommitInfo",
    "DocDriftError", "DocFile", "EmptyRepository", "ExcludeList", "IoError",
    "NotARepository", "Origin", "PathNotTracked", "Recognizer", "ReferenceVerdict",
    "Repo", "RevisionId", "RevisionUnknown", "ScanConfig", "ScanReport", "Segment",
    "SegmentKind", "SourceSet", "TrackedFile", "apply_exclusions", "build_source_set",
    "count_occurrences", "discover_docs", "evaluate_reference", "evaluate_references",
    "extract_references", "is_documentation_path", "load_exclude_list", "open_repo",
    "render_pr_comment", "scan", "segment_markdown", "write_outputs", "write_report_csv", "write_summary",
]

"""Exception hierarchy shared by every docdrift module."""

from __future__ import annotations


class DocDriftError(Exception):
    """Base class for all errors raised by docdrift."""


class NotARepository(DocDriftError):
    """The path exists but does not hold a git repository."""


class IoError(DocDriftError, OSError):
    """A path could not be read or written."""


class RevisionUnknown(DocDriftError):
    """A revspec or commit does not resolve in the repository."""


class AmbiguousPrefix(RevisionUnknown):
    """A short hash matches more than one commit."""


class PathNotTracked(DocDriftError):
    """The path is not a tracked blob at the requested revision."""


class EmptyRepository(DocDriftError):
    """The repository has no commits reachable from HEAD."""

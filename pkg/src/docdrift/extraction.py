"""Markdown segmentation and lexical code-element recognition.

Only a small Markdown subset is understood: fenced blocks opened by a line
starting with ``` or ~~~, and inline code delimited by equal backtick runs
on a single line. Everything else (HTML, indented blocks, links) is prose.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, replace

from .discovery import DocFile


class SegmentKind(enum.Enum):
    PROSE = "Prose"
    INLINE_CODE = "InlineCode"
    FENCED_BLOCK = "FencedBlock"


class Recognizer(enum.Enum):
    CALL = "Call"
    DOTTED_PATH = "DottedPath"
    CAMEL_CASE = "CamelCase"
    UNDERSCORED = "Underscored"
    GENERIC = "Generic"


@dataclass(frozen=True)
class Segment:
    """A run of document text of a single kind.

    ``opener`` and ``closer`` hold the delimiters that were stripped from
    ``text`` (backtick runs, fence lines) so that concatenating
    ``opener + text + closer`` over all segments gives back the document.
    ``start_line`` and ``offset`` locate the first character of ``text``.
    """

    kind: SegmentKind
    text: str
    start_line: int
    offset: int = 0
    opener: str = ""
    closer: str = ""

    @property
    def source(self) -> str:
        return self.opener + self.text + self.closer


@dataclass(frozen=True)
class CodeElementReference:
    raw: str
    anchor: str
    doc_path: str
    line: int
    context: SegmentKind
    recognizer: Recognizer
    occurrences_in_doc: int = 1


_FENCE_OPEN = re.compile(r"`{3,}|~{3,}")
_FENCE_CLOSE = re.compile(r"(`{3,}|~{3,})[ \t\r]*\n?\Z")
_BACKTICKS = re.compile(r"`+")
_LINES = re.compile(r"[^\n]*\n|[^\n]+\Z")

_WORD = re.compile(r"[A-Za-z0-9_]+")
_CAMEL = re.compile(r"[a-z][A-Z]")
_INNER_UNDERSCORE = re.compile(r"[A-Za-z0-9]_[A-Za-z0-9]")
MAX_SPAN = 80
MIN_WORD_LENGTH = 3


def segment_markdown(text: str) -> list[Segment]:
    segments: list[Segment] = []
    prose: list[str] = []
    prose_start = (1, 0)

    def flush() -> None:
        if prose:
            segments.append(Segment(SegmentKind.PROSE, "".join(prose), *prose_start))
            prose.clear()

    def add_prose(chunk: str, line: int, offset: int) -> None:
        nonlocal prose_start
        if not chunk:
            return
        if not prose:
            prose_start = (line, offset)
        prose.append(chunk)

    lines = _LINES.findall(text)
    i = 0
    offset = 0
    while i < len(lines):
        line = lines[i]
        lineno = i + 1
        opening = _FENCE_OPEN.match(line)
        if opening:
            flush()
            fence = opening.group()
            body_start = offset + len(line)
            j = i + 1
            closing = None
            while j < len(lines):
                m = _FENCE_CLOSE.match(lines[j])
                if m and m.group(1)[0] == fence[0] and len(m.group(1)) >= len(fence):
                    closing = lines[j]
                    break
                j += 1
            body = "".join(lines[i + 1 : j])
            closer = ""
            if closing is not None:
                newline = "\r\n" if body.endswith("\r\n") else "\n" if body.endswith("\n") else ""
                if newline:
                    body = body[: -len(newline)]
                closer = newline + closing
            segments.append(
                Segment(
                    SegmentKind.FENCED_BLOCK,
                    body,
                    lineno + line.endswith("\n"),
                    body_start,
                    line,
                    closer,
                )
            )
            offset = body_start + len(body) + len(closer)
            i = j + 1
            continue
        _split_inline(line, lineno, offset, add_prose, flush, segments)
        offset += len(line)
        i += 1
    flush()
    if not segments:
        segments.append(Segment(SegmentKind.PROSE, text, 1, 0))
    return segments


def _split_inline(line, lineno, offset, add_prose, flush, segments) -> None:
    runs = list(_BACKTICKS.finditer(line))
    pos = 0
    k = 0
    while k < len(runs):
        run = runs[k]
        width = len(run.group())
        match = next(
            (m for m in runs[k + 1 :] if len(m.group()) == width), None
        )
        if match is None:
            k += 1
            continue
        add_prose(line[pos : run.start()], lineno, offset + pos)
        flush()
        segments.append(
            Segment(
                SegmentKind.INLINE_CODE,
                line[run.end() : match.start()],
                lineno,
                offset + run.end(),
                run.group(),
                match.group(),
            )
        )
        pos = match.end()
        k = runs.index(match) + 1
    add_prose(line[pos:], lineno, offset + pos)


def _is_id_start(ch: str) -> bool:
    return ch == "_" or ("A" <= ch <= "Z") or ("a" <= ch <= "z")


def _balanced_end(text: str, start: int, open_ch: str, close_ch: str, allow_newline: bool) -> int:
    """Index of the bracket closing ``text[start]``, or -1.

    The enclosed span may be at most :data:`MAX_SPAN` characters.
    """
    depth = 0
    limit = min(len(text), start + MAX_SPAN + 2)
    for i in range(start, limit):
        ch = text[i]
        if ch == open_ch:
            depth += 1
        elif ch == close_ch:
            depth -= 1
            if depth == 0:
                return i
        elif ch == "\n" and not allow_newline:
            return -1
    return -1


def scan_tokens(text: str):
    """Yield ``(start, raw, anchor, recognizer)`` for every recognized token."""
    n = len(text)
    pos = 0
    while True:
        m = _WORD.search(text, pos)
        if m is None:
            return
        start, end = m.start(), m.end()
        if not _is_id_start(text[start]):
            pos = end
            continue
        parts = 1
        while end + 1 < n and text[end] == "." and _is_id_start(text[end + 1]):
            end = _WORD.match(text, end + 1).end()
            parts += 1
        chain = text[start:end]
        pos = end
        nxt = text[end] if end < n else ""
        if nxt == "(":
            close = _balanced_end(text, end, "(", ")", allow_newline=True)
            if close >= 0:
                yield start, text[start : close + 1], chain, Recognizer.CALL
                continue
        if parts == 1 and nxt == "<":
            close = _balanced_end(text, end, "<", ">", allow_newline=False)
            if close > end + 1:
                yield start, text[start : close + 1], chain, Recognizer.GENERIC
                continue
        if parts > 1:
            if nxt != "(":
                yield start, chain, chain, Recognizer.DOTTED_PATH
            continue
        if len(chain) >= MIN_WORD_LENGTH:
            if _CAMEL.search(chain):
                yield start, chain, chain, Recognizer.CAMEL_CASE
            elif _INNER_UNDERSCORE.search(chain):
                yield start, chain, chain, Recognizer.UNDERSCORED


def extract_references(doc: DocFile | str, text: str) -> list[CodeElementReference]:
    """Extract deduplicated code-element references from a Markdown document.

    Each anchor is reported once, at its first occurrence, with the number
    of times it occurs in the document.
    """
    doc_path = doc if isinstance(doc, str) else doc.display_path
    found: dict[str, CodeElementReference] = {}
    for seg in segment_markdown(text):
        for start, raw, anchor, kind in scan_tokens(seg.text):
            ref = found.get(anchor)
            if ref is not None:
                found[anchor] = replace(ref, occurrences_in_doc=ref.occurrences_in_doc + 1)
                continue
            found[anchor] = CodeElementReference(
                raw=raw,
                anchor=anchor,
                doc_path=doc_path,
                line=seg.start_line + seg.text.count("\n", 0, start),
                context=seg.kind,
                recognizer=kind,
            )
    # dicts keep insertion order, which is document order
    return list(found.values())

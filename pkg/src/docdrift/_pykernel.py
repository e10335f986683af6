"""Pure-Python occurrence counting, used when the compiled kernel is absent."""

from __future__ import annotations

import re
from collections.abc import Iterable
from functools import lru_cache

IMPLEMENTATION = "python"


@lru_cache(maxsize=4096)
def _pattern(anchor: bytes) -> re.Pattern[bytes]:
    # zero-width lookahead so overlapping hits (``a.a`` in ``a.a.a``) all count
    return re.compile(
        rb"(?<![A-Za-z0-9_])(?=" + re.escape(anchor) + rb"(?![A-Za-z0-9_]))"
    )


def count_anchor(data: bytes, anchor: bytes) -> int:
    if not anchor:
        raise ValueError("anchor must be non-empty")
    if anchor not in data:
        return 0
    return sum(1 for _ in _pattern(anchor).finditer(data))


def count_anchors(data: bytes, anchors: Iterable[bytes]) -> list[int]:
    return [count_anchor(data, a) for a in anchors]

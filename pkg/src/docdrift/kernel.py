"""Select the occurrence-counting kernel.

The compiled Cython kernel is used when it was built; otherwise the
pure-Python one. Set ``DOCDRIFT_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os

if os.environ.get("DOCDRIFT_PURE_PYTHON"):
    from ._pykernel import IMPLEMENTATION, count_anchor, count_anchors
else:
    try:
        from ._ckernel import IMPLEMENTATION, count_anchor, count_anchors
    except ImportError:
        from ._pykernel import IMPLEMENTATION, count_anchor, count_anchors

__all__ = ["IMPLEMENTATION", "count_anchor", "count_anchors"]

from __future__ import annotations

import importlib
import os

import pytest
from hypothesis import given, settings, strategies as st

from docdrift import _pykernel, kernel
from oracles import naive_count

try:
    _ckernel = importlib.import_module("docdrift._ckernel")
except ImportError:  # extension not built
    _ckernel = None

IMPLS = [pytest.param(_pykernel, id="python")]
IMPLS.append(
    pytest.param(_ckernel, id="cython", marks=pytest.mark.skipif(_ckernel is None, reason="not built"))
)


@pytest.fixture(params=IMPLS)
def impl(request):
    return request.param


@pytest.mark.parametrize(
    "text, anchor, expected",
    [
        ("def subtract(a, b):\n    return a - b\n", "subtract", 1),
        ("def subtract(a, b):\n    return a - b\n", "sub", 0),
        ("x.y = x.y + 1", "x.y", 2),
        ("a.a.a", "a.a", 2),
        ("foo", "foo", 1),
        ("_foo foo_ foo1 1foo foo", "foo", 1),
        ("", "foo", 0),
        ("fo", "foo", 0),
        ("arithmetic.add(2, 3)", "add", 1),
        ("naïve add", "add", 1),
        ("\xe9add\xe9", "add", 1),
    ],
)
def test_examples(impl, text, anchor, expected):
    assert naive_count(text, anchor) == expected
    assert impl.count_anchor(text.encode(), anchor.encode()) == expected


def test_empty_anchor_rejected(impl):
    with pytest.raises(ValueError):
        impl.count_anchor(b"abc", b"")


def test_count_anchors_matches_single(impl):
    data = b"add(1) add multiply x.add"
    anchors = [b"add", b"multiply", b"x.add", b"nope"]
    assert impl.count_anchors(data, anchors) == [impl.count_anchor(data, a) for a in anchors]
    assert impl.count_anchors(b"", anchors) == [0, 0, 0, 0]


def test_selected_kernel_reports_implementation():
    assert kernel.IMPLEMENTATION in {"python", "cython"}
    if os.environ.get("DOCDRIFT_PURE_PYTHON"):
        assert kernel.IMPLEMENTATION == "python"
    elif _ckernel is not None:
        assert kernel.IMPLEMENTATION == "cython"


haystacks = st.text(alphabet=st.sampled_from(list("ab_.1 \n(é")), max_size=300)
anchors = st.from_regex(r"[ab_1](?:[ab_1.]{0,4}[ab_1])?", fullmatch=True)


@settings(max_examples=1000)
@given(haystacks, anchors)
def test_matches_naive_oracle(text, anchor):
    expected = naive_count(text, anchor)
    data = text.encode()
    assert _pykernel.count_anchor(data, anchor.encode()) == expected
    if _ckernel is not None:
        assert _ckernel.count_anchor(data, anchor.encode()) == expected


@settings(max_examples=300)
@given(st.binary(max_size=300), anchors)
def test_bytes_equal_lossy_decoded_text(data, anchor):
    # counting raw bytes must agree with counting the U+FFFD-decoded text
    expected = naive_count(data.decode("utf-8", "replace"), anchor)
    assert kernel.count_anchor(data, anchor.encode()) == expected


@settings(max_examples=500)
@given(haystacks, anchors)
def test_oracles_agree(text, anchor):
    from oracles import find_count

    assert find_count(text, anchor) == naive_count(text, anchor)

# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled identifier-boundary occurrence counting."""

from libc.string cimport memchr, memcmp

IMPLEMENTATION = "cython"


cdef inline bint _is_word(unsigned char c) nogil:
    return (
        (c >= b'a' and c <= b'z')
        or (c >= b'A' and c <= b'Z')
        or (c >= b'0' and c <= b'9')
        or c == b'_'
    )


cdef Py_ssize_t _count(const unsigned char* hay, Py_ssize_t n,
                       const unsigned char* needle, Py_ssize_t m) nogil:
    cdef Py_ssize_t total = 0
    cdef Py_ssize_t i = 0
    cdef Py_ssize_t last = n - m
    cdef const unsigned char* hit
    cdef unsigned char first = needle[0]
    while i <= last:
        hit = <const unsigned char*>memchr(hay + i, first, last - i + 1)
        if hit == NULL:
            break
        i = hit - hay
        if (memcmp(hit, needle, m) == 0
                and (i == 0 or not _is_word(hay[i - 1]))
                and (i + m == n or not _is_word(hay[i + m]))):
            total += 1
        i += 1
    return total


def count_anchor(const unsigned char[:] data, bytes anchor):
    """Count positions where ``anchor`` occurs with non-word neighbours."""
    cdef Py_ssize_t m = len(anchor)
    if m == 0:
        raise ValueError("anchor must be non-empty")
    cdef const unsigned char* needle = anchor
    cdef Py_ssize_t n = data.shape[0]
    cdef Py_ssize_t result
    if n < m:
        return 0
    with nogil:
        result = _count(&data[0], n, needle, m)
    return result


def count_anchors(const unsigned char[:] data, anchors):
    """Count every anchor in ``anchors`` against one buffer."""
    cdef Py_ssize_t n = data.shape[0]
    cdef Py_ssize_t m, result
    cdef const unsigned char* needle
    cdef bytes a
    counts = []
    for a in anchors:
        m = len(a)
        if m == 0:
            raise ValueError("anchor must be non-empty")
        if n < m:
            counts.append(0)
            continue
        needle = a
        with nogil:
            result = _count(&data[0], n, needle, m)
        counts.append(result)
    return counts

# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled segment contact sweep; same contract as _kernels_py.segment_contacts.

Coordinates must fit in int64 with room for one product (|v| < 2**30).
"""

from libc.stdlib cimport free, malloc


cdef inline int _orient(long long ax, long long ay, long long bx, long long by, long long cx, long long cy) nogil:
    cdef long long v = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
    return (v > 0) - (v < 0)


cdef inline bint _on_segment(long long px, long long py, long long ax, long long ay, long long bx, long long by) nogil:
    return min(ax, bx) <= px <= max(ax, bx) and min(ay, by) <= py <= max(ay, by)


def segment_contacts(x1, y1, x2, y2):
    """All segment pairs (i, j, kind) with i < j that meet; kind 1 proper crossing, 2 other contact."""
    cdef Py_ssize_t n = len(x1)
    cdef long long *ax = <long long *> malloc(n * sizeof(long long))
    cdef long long *ay = <long long *> malloc(n * sizeof(long long))
    cdef long long *bx = <long long *> malloc(n * sizeof(long long))
    cdef long long *by = <long long *> malloc(n * sizeof(long long))
    cdef Py_ssize_t a, b, i, j, lo, hi
    cdef int d1, d2, d3, d4
    cdef bint touch
    out = []
    try:
        for a in range(n):
            ax[a] = x1[a]
            ay[a] = y1[a]
            bx[a] = x2[a]
            by[a] = y2[a]
        order = sorted(range(n), key=lambda k: min(x1[k], x2[k]))
        for a in range(n):
            i = order[a]
            for b in range(a + 1, n):
                j = order[b]
                if min(ax[j], bx[j]) > max(ax[i], bx[i]):
                    break
                if min(ay[j], by[j]) > max(ay[i], by[i]) or min(ay[i], by[i]) > max(ay[j], by[j]):
                    continue
                d1 = _orient(ax[i], ay[i], bx[i], by[i], ax[j], ay[j])
                d2 = _orient(ax[i], ay[i], bx[i], by[i], bx[j], by[j])
                d3 = _orient(ax[j], ay[j], bx[j], by[j], ax[i], ay[i])
                d4 = _orient(ax[j], ay[j], bx[j], by[j], bx[i], by[i])
                lo, hi = (i, j) if i < j else (j, i)
                if d1 * d2 < 0 and d3 * d4 < 0:
                    out.append((lo, hi, 1))
                    continue
                touch = (
                    (d1 == 0 and _on_segment(ax[j], ay[j], ax[i], ay[i], bx[i], by[i]))
                    or (d2 == 0 and _on_segment(bx[j], by[j], ax[i], ay[i], bx[i], by[i]))
                    or (d3 == 0 and _on_segment(ax[i], ay[i], ax[j], ay[j], bx[j], by[j]))
                    or (d4 == 0 and _on_segment(bx[i], by[i], ax[j], ay[j], bx[j], by[j]))
                )
                if touch:
                    out.append((lo, hi, 2))
    finally:
        free(ax)
        free(ay)
        free(bx)
        free(by)
    out.sort()
    return out

"""Pure-Python versions of the hot loops (used when the extension is absent)."""

from __future__ import annotations

from typing import Sequence


def _orient(ax, ay, bx, by, cx, cy):
    v = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
    return (v > 0) - (v < 0)


def segment_contacts(x1: Sequence[int], y1: Sequence[int], x2: Sequence[int], y2: Sequence[int]) -> list[tuple[int, int, int]]:
    """All segment pairs (i, j, kind) with i < j that meet.

    kind 1: the interiors cross at a single point; kind 2: any other contact
    (shared endpoint, endpoint on a segment, collinear overlap).
    Coordinates are integers; the test is exact.
    """
    n = len(x1)
    order = sorted(range(n), key=lambda i: min(x1[i], x2[i]))
    xmin = [min(x1[i], x2[i]) for i in range(n)]
    xmax = [max(x1[i], x2[i]) for i in range(n)]
    ymin = [min(y1[i], y2[i]) for i in range(n)]
    ymax = [max(y1[i], y2[i]) for i in range(n)]
    out = []
    for a in range(n):
        i = order[a]
        for b in range(a + 1, n):
            j = order[b]
            if xmin[j] > xmax[i]:
                break
            if ymin[j] > ymax[i] or ymin[i] > ymax[j]:
                continue
            d1 = _orient(x1[i], y1[i], x2[i], y2[i], x1[j], y1[j])
            d2 = _orient(x1[i], y1[i], x2[i], y2[i], x2[j], y2[j])
            d3 = _orient(x1[j], y1[j], x2[j], y2[j], x1[i], y1[i])
            d4 = _orient(x1[j], y1[j], x2[j], y2[j], x2[i], y2[i])
            lo, hi = (i, j) if i < j else (j, i)
            if d1 * d2 < 0 and d3 * d4 < 0:
                out.append((lo, hi, 1))
            elif (d1 == 0 or d2 == 0 or d3 == 0 or d4 == 0) and _touch(i, j, d1, d2, d3, d4, x1, y1, x2, y2):
                out.append((lo, hi, 2))
    out.sort()
    return out


def _on_segment(px, py, ax, ay, bx, by):
    return min(ax, bx) <= px <= max(ax, bx) and min(ay, by) <= py <= max(ay, by)


def _touch(i, j, d1, d2, d3, d4, x1, y1, x2, y2):
    if d1 == 0 and _on_segment(x1[j], y1[j], x1[i], y1[i], x2[i], y2[i]):
        return True
    if d2 == 0 and _on_segment(x2[j], y2[j], x1[i], y1[i], x2[i], y2[i]):
        return True
    if d3 == 0 and _on_segment(x1[i], y1[i], x1[j], y1[j], x2[j], y2[j]):
        return True
    if d4 == 0 and _on_segment(x2[i], y2[i], x1[j], y1[j], x2[j], y2[j]):
        return True
    return False

"""Circle-arc intersection with a positivity guard band.

Arc endpoints are floats in [0,1); an arc may wrap, in which case it is the
union of two intervals.  Intersections whose total length falls below the
guard band are reported as zero with a flag, so positivity claims never rest
on sub-epsilon float residue.
"""

from __future__ import annotations

GUARD = 1e-9


def _to_intervals(start: float, length: float) -> list[tuple[float, float]]:
    start %= 1.0
    if length >= 1.0:
        return [(0.0, 1.0)]
    end = start + length
    if end <= 1.0:
        return [(start, end)]
    return [(start, 1.0), (0.0, end - 1.0)]


def _intersect(u: list[tuple[float, float]], v: list[tuple[float, float]]):
    out = []
    for a0, a1 in u:
        for b0, b1 in v:
            lo, hi = max(a0, b0), min(a1, b1)
            if hi > lo:
                out.append((lo, hi))
    return out


def arc_intersection_length(arcs: list[tuple[float, float]], guard: float = GUARD):
    """Total length of the intersection of circle arcs (start, length).

    Returns (length, below_guard): when 0 < length < guard the length is
    reported as 0.0 with below_guard=True.
    """
    if not arcs:
        raise ValueError("need at least one arc")
    cur = _to_intervals(*arcs[0])
    for arc in arcs[1:]:
        cur = _intersect(cur, _to_intervals(*arc))
        if not cur:
            return 0.0, False
    total = sum(hi - lo for lo, hi in cur)
    if 0.0 < total < guard:
        return 0.0, True
    return total, False

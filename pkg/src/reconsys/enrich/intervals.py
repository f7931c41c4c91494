"""Interval lookup over possibly-overlapping range data.

Overlaps are resolved at build time into a sorted non-overlapping
decomposition: within each elementary segment the most specific
(smallest) source range wins, ties broken by an explicit deterministic
key.  Queries are then a single binary search.
"""

from __future__ import annotations

from bisect import bisect_right
from typing import Any, Callable, Iterable


class IntervalIndex:
    def __init__(self, segments: list[tuple[int, int, Any]]):
        # non-overlapping, sorted [(start, end_inclusive, payload)]
        self._starts = [s for s, _e, _p in segments]
        self._segments = segments

    @classmethod
    def build(
        cls,
        entries: Iterable[tuple[int, int, Any]],
        tie_break: Callable[[Any], Any] = repr,
    ) -> "IntervalIndex":
        """entries: (start, end_inclusive, payload); overlap allowed."""
        entries = list(entries)
        for start, end, _payload in entries:
            if start > end:
                raise ValueError(f"range start after end: {start} > {end}")
        if not entries:
            return cls([])
        bounds = sorted({b for s, e, _p in entries for b in (s, e + 1)})
        ordered = sorted(entries, key=lambda t: (t[1] - t[0], tie_break(t[2])))
        segments: list[tuple[int, int, Any]] = []
        for lo, hi_excl in zip(bounds, bounds[1:]):
            winner = next(
                (p for s, e, p in ordered if s <= lo and hi_excl - 1 <= e), None
            )
            if winner is None:
                continue
            if segments and segments[-1][2] is winner and segments[-1][1] + 1 == lo:
                segments[-1] = (segments[-1][0], hi_excl - 1, winner)
            else:
                segments.append((lo, hi_excl - 1, winner))
        return cls(segments)

    def lookup(self, point: int) -> Any | None:
        i = bisect_right(self._starts, point) - 1
        if i < 0:
            return None
        start, end, payload = self._segments[i]
        return payload if start <= point <= end else None

    def __len__(self) -> int:
        return len(self._segments)

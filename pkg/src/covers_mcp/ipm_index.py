"""
Internal pattern matching and period queries over one fixed text.

The index keeps the Z-array and the border array of T (built in O(n)).
An IPM query for X in Y is answered window by window: Y is cut into
windows of length 2|X|−1 starting at offsets ≡ 0 (mod |X|), each window
holds at most one progression of occurrences, and each window costs one
query unit. Occurrences of prefixes of T come straight from the Z-array.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, NamedTuple, Optional

import numpy as np

from .counters import OpCounter
from .errors import CoverInputError
from .oracles import BorderArray, border_array, find_occurrences, z_array
from .packed_text import PackedText
from .pillar import Fragment
from .progressions import Progression

TEXT_ID = "T"


class OccurrenceRuns(NamedTuple):
    """One progression per non-empty window, as parallel arrays (positions relative to Y)."""

    starts: np.ndarray
    diffs: np.ndarray
    counts: np.ndarray

    def progressions(self) -> list[Progression]:
        return [
            Progression(int(s), int(d) if c > 1 else 0, int(c))
            for s, d, c in zip(self.starts, self.diffs, self.counts)
        ]

    def positions(self) -> list[int]:
        return [v for p in self.progressions() for v in p.values()]

    def __len__(self) -> int:
        return len(self.starts)


@dataclass
class TextIndex:
    text: PackedText
    z: np.ndarray
    borders: BorderArray
    _groups: Optional[BorderGroups] = field(default=None, repr=False)

    @property
    def n(self) -> int:
        return self.text.n

    def whole(self) -> Fragment:
        return Fragment(TEXT_ID, 0, self.n)

    def fragment(self, start: int, end: int) -> Fragment:
        if not 0 <= start <= end <= self.n:
            raise CoverInputError(f"fragment [{start}, {end}) outside text of length {self.n}")
        return Fragment(TEXT_ID, start, end)

    def period_query(self, session: Optional[OpCounter] = None) -> BorderGroups:
        """All borders of T grouped per [2^i, 2^(i+1)); one unit per group."""
        if self._groups is None:
            self._groups = border_groups(self.text, self.borders)
        if session is not None:
            session.units(max(len(self._groups.groups), 1), "period_query")
        return self._groups


def build_index(t: PackedText) -> TextIndex:
    if t.n < 1:
        raise CoverInputError("cannot index an empty text")
    return TextIndex(text=t, z=z_array(t), borders=border_array(t))


def _group_windows(occ: np.ndarray, m: int) -> OccurrenceRuns:
    """Split ascending relative positions into per-window progressions (window = occ // m)."""
    if occ.size == 0:
        empty = np.zeros(0, dtype=np.int64)
        return OccurrenceRuns(empty, empty, empty)
    win = occ // m
    _, first, counts = np.unique(win, return_index=True, return_counts=True)
    diffs = np.zeros_like(first)
    multi = counts > 1
    diffs[multi] = occ[first[multi] + 1] - occ[first[multi]]
    return OccurrenceRuns(occ[first], diffs, counts)


def ipm_runs(
    idx: TextIndex, x: Fragment, y: Fragment, session: Optional[OpCounter] = None
) -> OccurrenceRuns:
    """Array form of ipm_query."""
    m, ylen = len(x), len(y)
    if m == 0:
        raise CoverInputError("IPM pattern must be non-empty")
    if m > ylen:
        raise CoverInputError(f"IPM needs |X| <= |Y| (|X|={m}, |Y|={ylen})")
    if y.end > idx.n or x.end > idx.n:
        raise CoverInputError("fragment outside the indexed text")
    if session is not None:
        session.units((ylen - m) // m + 1, "ipm_window")
    last = y.end - m
    if x.start == 0:
        occ = np.flatnonzero(idx.z[y.start : last + 1] >= m).astype(np.int64)
    else:
        sym = idx.text.symbols
        occ = np.asarray(
            find_occurrences(sym[x.start : x.end], sym[y.start : y.end]), dtype=np.int64
        )
    return _group_windows(occ, m)


def ipm_query(
    idx: TextIndex, x: Fragment, y: Fragment, session: Optional[OpCounter] = None
) -> list[Progression]:
    """Occurrences of X in Y (relative to Y), at most one progression per window."""
    return ipm_runs(idx, x, y, session).progressions()


@dataclass
class BorderGroups:
    """Border lengths of T, one progression per power-of-two range [d, 2d)."""

    n: int
    groups: dict[int, Progression]

    def group(self, d: int) -> Optional[Progression]:
        return self.groups.get(d)

    def union(self) -> list[int]:
        return [v for d in sorted(self.groups) for v in self.groups[d].values()]

    def __iter__(self) -> Iterator[tuple[int, Progression]]:
        for d in sorted(self.groups):
            yield d, self.groups[d]


def border_groups(t: PackedText, borders: Optional[BorderArray] = None) -> BorderGroups:
    if t.n < 1:
        raise CoverInputError("border groups need n >= 1")
    if borders is None:
        borders = border_array(t)
    buckets: dict[int, list[int]] = {}
    for b in sorted(borders.chain(t.n)):
        buckets.setdefault(1 << (b.bit_length() - 1), []).append(b)
    return BorderGroups(t.n, {d: Progression.from_positions(v) for d, v in buckets.items()})

"""
All covers of a packed text as O(log n) arithmetic progressions.

Lengths up to the threshold c are short covers: they are decided from the
deduplicated set F of sentinel-padded length-3c windows S_i = T[(i−1)c ..
(i+2)c), one per multiple of c. A short border C covers T iff in every
window of F the occurrences of C cover the in-text part of the middle
block [c, 2c).

Longer covers come from the border groups of T. Within one group only the
two shortest borders are checked directly; the remaining covers of the
group are counted off the runs of occurrences of the shortest one.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .config import PRESENCE_TABLE_LIMIT
from .counters import OpCounter
from .errors import CoverInputError
from .ipm_index import OccurrenceRuns, TextIndex, build_index, ipm_query, ipm_runs
from .packed_text import PackedText, extract_packed
from .pillar import Fragment, PillarBackend, is_cover_pillar
from .progressions import CoverSet, Progression

_INT64_CODE_LIMIT = 1 << 62


def short_cover_threshold(n: int, sigma: int, sentinel: bool = True) -> int:
    """Largest c with base^(6c) <= n, base = σ+1 (σ without the sentinel)."""
    base = sigma + 1 if sentinel else sigma
    base = max(base, 2)
    c = 0
    while base ** (6 * (c + 1)) <= n:
        c += 1
    return c


@dataclass
class ShortCoverContext:
    c: int
    sigma: int
    window_count: int
    rows: np.ndarray  # distinct padded windows, shape (|F|, 3c)
    positions: np.ndarray  # representative window start in T (may be negative)
    codes: Optional[np.ndarray] = None  # base-(σ+1) codes when they fit
    table_size: int = 0

    @property
    def distinct(self) -> int:
        return len(self.rows)


def _padded_windows(t: PackedText, c: int) -> tuple[np.ndarray, int]:
    count = (t.n + c - 1) // c
    padded = np.full((count + 2) * c, t.sigma, dtype=np.int64)
    padded[c : c + t.n] = t.symbols
    return sliding_window_view(padded, 3 * c)[::c][:count], count


def build_factor_set(
    t: PackedText, c: int, counter: Optional[OpCounter] = None
) -> ShortCoverContext:
    """Deduplicate the padded windows through a direct-addressed presence table."""
    if c < 1:
        raise CoverInputError(f"threshold c must be >= 1, got {c}")
    windows, count = _padded_windows(t, c)
    base = t.sigma + 1
    span = base ** (3 * c)
    if counter is not None:
        counter.words(count, "window")
    if span <= _INT64_CODE_LIMIT:
        powers = base ** np.arange(3 * c - 1, -1, -1, dtype=np.int64)
        codes = windows @ powers
        if span <= PRESENCE_TABLE_LIMIT:
            seen = np.zeros(span, dtype=bool)
            seen[codes] = True
            first = np.full(span, count, dtype=np.int64)
            np.minimum.at(first, codes, np.arange(count, dtype=np.int64))
            distinct = np.flatnonzero(seen)
            reps = first[distinct]
            if counter is not None:
                counter.words((span + 63) // 64, "presence_scan")
        else:
            distinct, reps = np.unique(codes, return_index=True)
            span = 0
        return ShortCoverContext(
            c=c, sigma=t.sigma, window_count=count, rows=np.array(windows[reps]),
            positions=(reps - 1) * c, codes=distinct, table_size=span,
        )
    first_seen: dict[bytes, int] = {}
    for i in range(count):
        first_seen.setdefault(windows[i].tobytes(), i)
    reps = np.fromiter(first_seen.values(), dtype=np.int64, count=len(first_seen))
    return ShortCoverContext(
        c=c, sigma=t.sigma, window_count=count, rows=np.array(windows[reps]),
        positions=(reps - 1) * c,
    )


def _is_border(t: PackedText, length: int, counter: Optional[OpCounter]) -> bool:
    head = extract_packed(t, 0, length - 1, counter)
    tail = extract_packed(t, t.n - length, t.n - 1, counter)
    return head == tail


def short_covers(
    t: PackedText, ctx: ShortCoverContext, counter: Optional[OpCounter] = None
) -> set[int]:
    """Covers of length <= c, decided window by window on the distinct windows."""
    c = ctx.c
    rows = ctx.rows
    needed = rows[:, c : 2 * c] != ctx.sigma
    out = set()
    for length in range(1, min(c, t.n) + 1):
        if counter is not None:
            counter.words(1, "border_check")
        if not _is_border(t, length, counter):
            continue
        if counter is not None:
            counter.words(3 * c * len(rows), "window_check")
        pattern = t.symbols[:length]
        starts = (sliding_window_view(rows, length, axis=1) == pattern).all(axis=2)
        covered = np.zeros(rows.shape, dtype=bool)
        for k in range(length):
            covered[:, k : k + starts.shape[1]] |= starts
        if (covered[:, c : 2 * c] | ~needed).all():
            out.add(length)
    return out


def occurrences_of_border(
    idx: TextIndex, length: int, session: Optional[OpCounter] = None
) -> list[Progression]:
    """Occurrences of T[0..length) in T, one progression per aligned window."""
    return ipm_query(idx, idx.fragment(0, length), idx.whole(), session)


def _covers_from_runs(runs: OccurrenceRuns, length: int, n: int) -> bool:
    if len(runs) == 0 or runs.starts[0] != 0:
        return False
    if ((runs.counts > 1) & (runs.diffs > length)).any():
        return False
    lasts = runs.starts + (runs.counts - 1) * runs.diffs
    if (runs.starts[1:] > lasts[:-1] + length).any():
        return False
    return int(lasts[-1]) + length == n


def _min_run(runs: OccurrenceRuns, p: int) -> int:
    """Shortest maximal run of consecutive occurrences at distance p."""
    total = int(runs.counts.sum())
    base = np.repeat(runs.starts, runs.counts)
    step = np.arange(total) - np.repeat(np.cumsum(runs.counts) - runs.counts, runs.counts)
    positions = base + step * np.repeat(runs.diffs, runs.counts)
    breaks = np.flatnonzero(np.diff(positions) != p)
    edges = np.concatenate(([0], breaks + 1, [total]))
    return int(np.diff(edges).min())


def _trim(group: Progression, c: int) -> Optional[Progression]:
    if group.last <= c:
        return None
    if group.start > c:
        return group
    skip = (c - group.start) // group.diff + 1
    return Progression(group.start + skip * group.diff, group.diff, group.count - skip)


def _group_covers(
    idx: TextIndex, group: Progression, counter: OpCounter
) -> Optional[Progression]:
    n = idx.n
    whole = idx.whole()
    b1 = group.start
    runs1 = ipm_runs(idx, idx.fragment(0, b1), whole, counter)
    if not _covers_from_runs(runs1, b1, n):
        return None
    if group.count == 1:
        return group
    b2 = b1 + group.diff
    if not _covers_from_runs(ipm_runs(idx, idx.fragment(0, b2), whole, counter), b2, n):
        return Progression.singleton(b1)
    if group.count == 2:
        return group
    delta = _min_run(runs1, group.diff)
    return Progression(b1, group.diff, min(delta, group.count))


def long_covers(
    t: PackedText,
    idx: TextIndex,
    c: int,
    counter: Optional[OpCounter] = None,
    workers: int = 1,
) -> list[Progression]:
    """Cover lengths > c (n included), one progression per border group, ascending."""
    if idx.text is not t and idx.text != t:
        raise CoverInputError("index was built for a different text")
    groups = idx.period_query(counter)
    trimmed = [g for g in (_trim(p, c) for _, p in groups) if g is not None]
    sessions = [OpCounter() for _ in trimmed]
    if workers > 1 and len(trimmed) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            found = list(pool.map(_group_covers, [idx] * len(trimmed), trimmed, sessions))
    else:
        found = [_group_covers(idx, g, s) for g, s in zip(trimmed, sessions)]
    if counter is not None:
        for s in sessions:
            counter.merge(s)
    out = [p for p in found if p is not None]
    if t.n > c:
        out.append(Progression.singleton(t.n))
    return out


@dataclass
class CoverRun:
    cover_set: CoverSet
    c: int
    short_word_ops: int
    long_query_units: int
    group_count: int
    window_count: int
    distinct_windows: int
    short_counter: OpCounter = field(default_factory=OpCounter)
    long_counter: OpCounter = field(default_factory=OpCounter)

    def as_dict(self) -> dict:
        return {
            "n": self.cover_set.n,
            "c": self.c,
            "short_word_ops": self.short_word_ops,
            "long_query_units": self.long_query_units,
            "group_count": self.group_count,
            "window_count": self.window_count,
            "distinct_windows": self.distinct_windows,
            "progressions": [p.as_dict() for p in self.cover_set.progs],
        }


def covers_with_stats(
    t: PackedText,
    force_c: Optional[int] = None,
    workers: int = 1,
    index: Optional[TextIndex] = None,
) -> CoverRun:
    if t.n < 1:
        raise CoverInputError("covers are defined for n >= 1")
    c = short_cover_threshold(t.n, t.sigma) if force_c is None else force_c
    if c < 0:
        raise CoverInputError(f"threshold c must be >= 0, got {c}")
    short_counter, long_counter = OpCounter(), OpCounter()
    short: set[int] = set()
    windows = distinct = 0
    if c >= 1:
        ctx = build_factor_set(t, c, short_counter)
        short = short_covers(t, ctx, short_counter)
        windows, distinct = ctx.window_count, ctx.distinct
    idx = index if index is not None else build_index(t)
    long = long_covers(t, idx, c, long_counter, workers)
    progs = [Progression.singleton(v) for v in sorted(short)] + long
    return CoverRun(
        cover_set=CoverSet(t.n, progs),
        c=c,
        short_word_ops=short_counter.word_ops,
        long_query_units=long_counter.query_units,
        group_count=len(idx.period_query().groups),
        window_count=windows,
        distinct_windows=distinct,
        short_counter=short_counter,
        long_counter=long_counter,
    )


def covers(t: PackedText) -> CoverSet:
    return covers_with_stats(t).cover_set


def shortest_cover(t: PackedText) -> int:
    return covers(t).shortest()


def is_superprimitive(t: PackedText) -> bool:
    return shortest_cover(t) == t.n


def prefix_is_cover(t: PackedText, length: int) -> bool:
    return covers(t).contains(length)


# ---------------------------------------------------------------------------
# The same pipeline in PILLAR primitives
# ---------------------------------------------------------------------------


def border_groups_pillar(backend: PillarBackend, text_id: str) -> dict[int, Progression]:
    """
    Proper borders of T per range [d, 2d), largest range first.

    A border b in [d, 2d) puts the length-d suffix of T at position b − d of
    T[0 .. 2d−1). One IPM query per range yields the candidates and one
    LCP_R query confirms each of them.
    """
    t = backend.whole(text_id)
    n = backend.length(t)
    groups: dict[int, Progression] = {}
    if n < 2:
        return groups
    d = 1 << ((n - 1).bit_length() - 1)
    while d >= 1:
        hits = backend.ipm(t.sub(n - d, n), t.sub(0, min(2 * d - 1, n)))
        if hits is not None:
            found = [
                j + d
                for j in hits.values()
                if j + d < n and backend.lcp_r(t.sub(0, j + d), t) >= j + d
            ]
            if found:
                groups[d] = Progression.from_positions(found)
        d >>= 1
    return groups


def occurrences_pillar(backend: PillarBackend, t: Fragment, length: int) -> list[int]:
    """Occurrences of T[0..length) in T from IPM queries over aligned windows of 2·length−1."""
    n = len(t)
    x = t.sub(0, length)
    out: list[int] = []
    for s in range(0, n - length + 1, length):
        hits = backend.ipm(x, t.sub(s, min(s + 2 * length - 1, n)))
        if hits is not None:
            out.extend(s + v for v in hits.values())
    return out


def _covers_from_positions(positions: list[int], length: int, n: int) -> bool:
    if not positions or positions[0] != 0:
        return False
    if any(b - a > length for a, b in zip(positions, positions[1:])):
        return False
    return positions[-1] + length == n


def _min_run_positions(positions: list[int], p: int) -> int:
    shortest, run = len(positions), 1
    for a, b in zip(positions, positions[1:]):
        if b - a == p:
            run += 1
        else:
            shortest, run = min(shortest, run), 1
    return min(shortest, run)


def _group_covers_pillar(
    backend: PillarBackend, t: Fragment, group: Progression
) -> Optional[Progression]:
    n = len(t)
    b1 = group.start
    pos1 = occurrences_pillar(backend, t, b1)
    if not _covers_from_positions(pos1, b1, n):
        return None
    if group.count == 1:
        return group
    b2 = b1 + group.diff
    if not _covers_from_positions(occurrences_pillar(backend, t, b2), b2, n):
        return Progression.singleton(b1)
    if group.count == 2:
        return group
    delta = _min_run_positions(pos1, group.diff)
    return Progression(b1, group.diff, min(delta, group.count))


def covers_pillar(backend: PillarBackend, text_id: str, c: int = 0) -> CoverSet:
    """
    covers(T) with every access to T going through `backend`.

    Borders up to c are checked one by one with is_cover_pillar; longer
    ones per border group from B1, B2 and the runs of occurrences of B1.
    """
    if c < 0:
        raise CoverInputError(f"threshold c must be >= 0, got {c}")
    t = backend.whole(text_id)
    n = backend.length(t)
    if n < 1:
        raise CoverInputError("covers are defined for n >= 1")
    groups = border_groups_pillar(backend, text_id)
    progs = [
        Progression.singleton(b)
        for d in sorted(groups)
        for b in groups[d].values()
        if b <= c and is_cover_pillar(backend, text_id, b)
    ]
    for d in sorted(groups):
        trimmed = _trim(groups[d], c)
        if trimmed is not None:
            found = _group_covers_pillar(backend, t, trimmed)
            if found is not None:
                progs.append(found)
    progs.append(Progression.singleton(n))
    return CoverSet(n, progs)

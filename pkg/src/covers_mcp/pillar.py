"""
PILLAR primitives over a collection of packed texts.

Backends answer Extract, Access, Length, LCP, LCP_R and IPM on fragments.
InstrumentedBackend wraps any backend and records every query in a
QueryLedger: per-kind counts, touched positions and a replayable transcript.
The cover check at the bottom of this module uses nothing but these
primitives, so it can be run against the lower-bound adversary.
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Mapping, Optional, Protocol, runtime_checkable

import numpy as np

from .config import WORD_BITS
from .counters import OpCounter
from .errors import ContractViolation, CoverInputError
from .oracles import find_occurrences
from .packed_text import PackedText, extract_packed
from .progressions import Progression

__all__ = [
    "Fragment",
    "PillarQuery",
    "PillarBackend",
    "DirectBackend",
    "QueryLedger",
    "InstrumentedBackend",
    "OpCounter",
    "execute",
    "replay_transcript",
    "ledger_from_jsonl",
    "is_cover_pillar",
    "shortest_cover_pillar",
]

KINDS = ("extract", "access", "length", "lcp", "lcp_r", "ipm")


@dataclass(frozen=True)
class Fragment:
    text_id: str
    start: int
    end: int

    def __post_init__(self) -> None:
        if not 0 <= self.start <= self.end:
            raise CoverInputError(f"invalid fragment [{self.start}, {self.end})")

    def __len__(self) -> int:
        return self.end - self.start

    def sub(self, i: int, j: int) -> Fragment:
        """Fragment of this fragment, [i, j) relative to its start."""
        if not 0 <= i <= j <= len(self):
            raise CoverInputError(f"sub-range [{i}, {j}) outside fragment of length {len(self)}")
        return Fragment(self.text_id, self.start + i, self.start + j)

    def to_list(self) -> list:
        return [self.text_id, self.start, self.end]

    @classmethod
    def from_list(cls, item: list) -> Fragment:
        return cls(str(item[0]), int(item[1]), int(item[2]))


@dataclass(frozen=True)
class PillarQuery:
    kind: str
    x: Fragment
    y: Optional[Fragment] = None
    i: Optional[int] = None
    r: Optional[int] = None

    def to_dict(self) -> dict:
        out: dict[str, Any] = {"kind": self.kind, "x": self.x.to_list()}
        if self.y is not None:
            out["y"] = self.y.to_list()
        if self.i is not None:
            out["i"] = self.i
        if self.r is not None:
            out["r"] = self.r
        return out

    @classmethod
    def from_dict(cls, d: dict) -> PillarQuery:
        return cls(
            kind=d["kind"],
            x=Fragment.from_list(d["x"]),
            y=Fragment.from_list(d["y"]) if "y" in d else None,
            i=d.get("i"),
            r=d.get("r"),
        )


def encode_answer(answer: Any) -> Any:
    if isinstance(answer, Progression):
        return answer.as_dict()
    if isinstance(answer, tuple):
        return list(answer)
    return answer


def decode_answer(kind: str, raw: Any) -> Any:
    if kind == "ipm":
        return None if raw is None else Progression(**raw)
    if kind == "extract":
        return tuple(raw)
    return raw


@runtime_checkable
class PillarBackend(Protocol):
    def whole(self, text_id: str) -> Fragment: ...

    def extract(self, s: Fragment, i: int, r: int) -> tuple[int, ...]: ...

    def access(self, s: Fragment, i: int) -> int: ...

    def length(self, s: Fragment) -> int: ...

    def lcp(self, x: Fragment, y: Fragment) -> int: ...

    def lcp_r(self, x: Fragment, y: Fragment) -> int: ...

    def ipm(self, x: Fragment, y: Fragment) -> Optional[Progression]: ...


def execute(backend: PillarBackend, query: PillarQuery) -> Any:
    """Dispatch a recorded query to a backend."""
    if query.kind == "extract":
        return backend.extract(query.x, query.i or 0, query.r or 0)
    if query.kind == "access":
        return backend.access(query.x, query.i or 0)
    if query.kind == "length":
        return backend.length(query.x)
    if query.kind in ("lcp", "lcp_r", "ipm"):
        if query.y is None:
            raise CoverInputError(f"{query.kind} query needs two fragments")
        return getattr(backend, query.kind)(query.x, query.y)
    raise CoverInputError(f"unknown PILLAR query kind {query.kind!r}")


def _first_diff(a: np.ndarray, b: np.ndarray, bits: int, m: int) -> int:
    """Index of the first differing symbol of two packed words arrays, or m."""
    w = (m * bits + WORD_BITS - 1) // WORD_BITS
    diff = a[:w] ^ b[:w]
    nz = np.flatnonzero(diff)
    if not nz.size:
        return m
    v = int(diff[nz[0]])
    bit = (v & -v).bit_length() - 1
    return min((int(nz[0]) * WORD_BITS + bit) // bits, m)


def _last_diff(a: np.ndarray, b: np.ndarray, bits: int) -> int:
    """Index of the last differing symbol, or -1 if equal."""
    diff = a ^ b
    nz = np.flatnonzero(diff)
    if not nz.size:
        return -1
    bit = int(diff[nz[-1]]).bit_length() - 1
    return (int(nz[-1]) * WORD_BITS + bit) // bits


class DirectBackend:
    """Exact answers computed from the packed texts; LCP and LCP_R compare words."""

    def __init__(self, texts: Mapping[str, PackedText], counter: Optional[OpCounter] = None):
        self.texts = dict(texts)
        self.counter = counter

    def _text(self, s: Fragment) -> PackedText:
        try:
            t = self.texts[s.text_id]
        except KeyError as e:
            raise CoverInputError(f"unknown text id {s.text_id!r}") from e
        if s.end > t.n:
            raise CoverInputError(f"fragment {s} exceeds text length {t.n}")
        return t

    def _packed(self, s: Fragment) -> PackedText:
        return extract_packed(self._text(s), s.start, s.end - 1, self.counter)

    def whole(self, text_id: str) -> Fragment:
        return Fragment(text_id, 0, self._text(Fragment(text_id, 0, 0)).n)

    def extract(self, s: Fragment, i: int, r: int) -> tuple[int, ...]:
        sub = s.sub(i, r)
        t = self._text(sub)
        if self.counter is not None:
            self.counter.words(1 + (len(sub) * t.bits_per_symbol) // WORD_BITS, "extract")
        return tuple(int(v) for v in t.symbols[sub.start : sub.end])

    def access(self, s: Fragment, i: int) -> int:
        if not 0 <= i < len(s):
            raise CoverInputError(f"access {i} outside fragment of length {len(s)}")
        if self.counter is not None:
            self.counter.words(1, "access")
        return self._text(s).access(s.start + i)

    def length(self, s: Fragment) -> int:
        self._text(s)
        return len(s)

    def lcp(self, x: Fragment, y: Fragment) -> int:
        m = min(len(x), len(y))
        if m == 0:
            return 0
        a, b = self._packed(x.sub(0, m)), self._packed(y.sub(0, m))
        return _first_diff(a.words, b.words, a.bits_per_symbol, m)

    def lcp_r(self, x: Fragment, y: Fragment) -> int:
        m = min(len(x), len(y))
        if m == 0:
            return 0
        a = self._packed(x.sub(len(x) - m, len(x)))
        b = self._packed(y.sub(len(y) - m, len(y)))
        return m - 1 - _last_diff(a.words, b.words, a.bits_per_symbol)

    def ipm(self, x: Fragment, y: Fragment) -> Optional[Progression]:
        if len(x) < 1 or len(y) > 2 * len(x):
            raise ContractViolation(
                f"IPM needs 1 <= |X| and |Y| <= 2|X| (|X|={len(x)}, |Y|={len(y)})"
            )
        if self.counter is not None:
            self.counter.units(1, "ipm")
        tx, ty = self._text(x), self._text(y)
        occ = find_occurrences(tx.symbols[x.start : x.end], ty.symbols[y.start : y.end])
        return Progression.from_positions(occ) if occ else None


def _span(start: int, end: int) -> range:
    return range(start, end)


@dataclass
class QueryLedger:
    """
    Counts, touched positions and transcript of one experiment run.

    IPM queries touch their fragments only when |X| < ipm_touch_limit
    (None: always). Mismatch witnesses are kept apart from touches.
    """

    ipm_touch_limit: Optional[int] = None
    counts: Counter = field(default_factory=Counter)
    touched: dict[str, set[int]] = field(default_factory=dict)
    witnesses: dict[str, set[int]] = field(default_factory=dict)
    transcript: list[dict] = field(default_factory=list)

    def _touch(self, text_id: str, positions) -> None:
        self.touched.setdefault(text_id, set()).update(positions)

    def record_touch(self, query: PillarQuery, answer: Any) -> QueryLedger:
        x, y = query.x, query.y
        if query.kind == "access":
            self._touch(x.text_id, [x.start + (query.i or 0)])
        elif query.kind == "extract":
            self._touch(x.text_id, _span(x.start + (query.i or 0), x.start + (query.r or 0)))
        elif query.kind == "lcp" and y is not None and answer:
            self._touch(x.text_id, _span(x.start, x.start + answer))
            self._touch(y.text_id, _span(y.start, y.start + answer))
        elif query.kind == "lcp_r" and y is not None and answer:
            self._touch(x.text_id, _span(x.end - answer, x.end))
            self._touch(y.text_id, _span(y.end - answer, y.end))
        elif query.kind == "ipm" and y is not None:
            if self.ipm_touch_limit is None or len(x) < self.ipm_touch_limit:
                self._touch(x.text_id, _span(x.start, x.end))
                self._touch(y.text_id, _span(y.start, y.end))
        return self

    def record_witness(self, query: PillarQuery, answer: Any) -> None:
        x, y = query.x, query.y
        if y is None or query.kind not in ("lcp", "lcp_r") or answer >= min(len(x), len(y)):
            return
        if query.kind == "lcp":
            pairs = [(x.text_id, x.start + answer), (y.text_id, y.start + answer)]
        else:
            pairs = [(x.text_id, x.end - 1 - answer), (y.text_id, y.end - 1 - answer)]
        for text_id, pos in pairs:
            self.witnesses.setdefault(text_id, set()).add(pos)

    def record(self, query: PillarQuery, answer: Any) -> None:
        self.counts[query.kind] += 1
        self.record_touch(query, answer)
        self.record_witness(query, answer)
        entry = query.to_dict()
        entry["answer"] = encode_answer(answer)
        self.transcript.append(entry)

    @property
    def total_queries(self) -> int:
        return sum(self.counts.values())

    def touched_count(self, text_id: Optional[str] = None) -> int:
        if text_id is not None:
            return len(self.touched.get(text_id, ()))
        return sum(len(v) for v in self.touched.values())

    def to_jsonl(self) -> str:
        return "\n".join(json.dumps(entry) for entry in self.transcript)


def ledger_from_jsonl(payload: str) -> list[dict]:
    """Parse transcript lines written by QueryLedger.to_jsonl."""
    return [json.loads(line) for line in payload.splitlines() if line.strip()]


class InstrumentedBackend:
    """Forwards to `backend` and records every answered query in `ledger`."""

    def __init__(self, backend: PillarBackend, ledger: Optional[QueryLedger] = None):
        self.backend = backend
        self.ledger = ledger if ledger is not None else QueryLedger()

    def _run(self, query: PillarQuery) -> Any:
        answer = execute(self.backend, query)
        self.ledger.record(query, answer)
        return answer

    def whole(self, text_id: str) -> Fragment:
        return self.backend.whole(text_id)

    def extract(self, s: Fragment, i: int, r: int) -> tuple[int, ...]:
        return self._run(PillarQuery("extract", s, i=i, r=r))

    def access(self, s: Fragment, i: int) -> int:
        return self._run(PillarQuery("access", s, i=i))

    def length(self, s: Fragment) -> int:
        return self._run(PillarQuery("length", s))

    def lcp(self, x: Fragment, y: Fragment) -> int:
        return self._run(PillarQuery("lcp", x, y))

    def lcp_r(self, x: Fragment, y: Fragment) -> int:
        return self._run(PillarQuery("lcp_r", x, y))

    def ipm(self, x: Fragment, y: Fragment) -> Optional[Progression]:
        return self._run(PillarQuery("ipm", x, y))


def replay_transcript(entries: list[dict], backend: PillarBackend) -> list[dict]:
    """Re-ask every recorded query; return the entries whose answer differs."""
    mismatches = []
    for pos, entry in enumerate(entries):
        query = PillarQuery.from_dict(entry)
        got = execute(backend, query)
        expected = decode_answer(query.kind, entry.get("answer"))
        if got != expected:
            mismatches.append(
                {"index": pos, "expected": entry.get("answer"), "got": encode_answer(got)}
            )
    return mismatches


# ---------------------------------------------------------------------------
# Cover checking in PILLAR primitives
# ---------------------------------------------------------------------------


def is_cover_pillar(backend: PillarBackend, text_id: str, length: int) -> bool:
    """
    Decide whether T[0..length) covers T.

    Border test with one LCP_R query, then occurrences from IPM queries over
    the windows T[s .. s+2·length−1) for s = 0, length, 2·length, ...
    """
    t = backend.whole(text_id)
    n = backend.length(t)
    if not 1 <= length <= n:
        raise CoverInputError(f"cover length {length} out of range [1, {n}]")
    if length == n:
        return True
    x = t.sub(0, length)
    if backend.lcp_r(x, t) < length:
        return False
    covered = 0
    for s in range(0, n - length + 1, length):
        window = t.sub(s, min(s + 2 * length - 1, n))
        hits = backend.ipm(x, window)
        if hits is None:
            continue
        if hits.start + s > covered or (hits.count > 1 and hits.diff > length):
            return False
        covered = max(covered, hits.last + s + length)
    return covered == n


def shortest_cover_pillar(backend: PillarBackend, text_id: str) -> int:
    t = backend.whole(text_id)
    n = backend.length(t)
    for length in range(1, n + 1):
        if is_cover_pillar(backend, text_id, length):
            return length
    return n

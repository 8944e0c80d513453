"""
Adversary for cover problems in the PILLAR model.

The reference text T_k is φ applied to the order-k binary de Bruijn
sequence. Every substring of T_k of length >= 15(k+1)−1 occurs once, so an
IPM query for such a pattern only reveals whether X lies inside Y. After
q = floor(2^k / (6k)) answered queries some position of T_k is untouched;
flipping it turns a text covered by "aba" into a superprimitive one that is
consistent with every answer given.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Callable, NamedTuple, Optional

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from . import diagnostics
from .config import LOWER_BOUND_C
from .cover_algorithms import covers_pillar, short_cover_threshold
from .errors import BudgetExhausted, ContractViolation, CoverInputError, HarnessMisuse
from .oracles import is_cover_naive, shortest_cover_naive
from .packed_text import PackedText, pack
from .pillar import (
    DirectBackend,
    Fragment,
    PillarQuery,
    QueryLedger,
    execute,
    replay_transcript,
)
from .progressions import Progression

TEXT_ID = "T"
BLOCKS = {0: "abababaabaababa", 1: "abababaababaaba"}
VERIFY_MAX_K = 14


def de_bruijn(k: int) -> str:
    """Binary de Bruijn sequence of order k: Lyndon words in lexicographic order, linearized."""
    if k < 1:
        raise CoverInputError("order must be >= 1")
    a = [0] * (k + 1)
    out: list[int] = []

    def visit(t: int, p: int) -> None:
        if t > k:
            if k % p == 0:
                out.extend(a[1 : p + 1])
            return
        a[t] = a[t - p]
        visit(t + 1, p)
        for bit in range(a[t - p] + 1, 2):
            a[t] = bit
            visit(t + 1, t)

    visit(1, 1)
    out.extend(out[: k - 1])
    return "".join(str(b) for b in out)


def phi(bit: int) -> str:
    if bit not in BLOCKS:
        raise CoverInputError(f"phi is defined on bits, got {bit!r}")
    return BLOCKS[bit]


def unique_length(k: int) -> int:
    """Substrings at least this long occur once in T_k."""
    return 15 * (k + 1) - 1


def query_budget(k: int) -> int:
    return 2**k // (6 * k)


def windows_distinct(symbols: np.ndarray, length: int) -> bool:
    if length > len(symbols):
        return True
    rows = np.packbits(sliding_window_view(symbols.astype(np.uint8), length), axis=1)
    keys = np.ascontiguousarray(rows).view(np.dtype((np.void, rows.shape[1]))).ravel()
    return len(np.unique(keys)) == len(keys)


@dataclass
class AdversaryState:
    k: int
    text: PackedText
    budget: int
    ledger: QueryLedger
    answered: int = 0
    backend: DirectBackend = field(init=False)

    def __post_init__(self) -> None:
        self.backend = DirectBackend({TEXT_ID: self.text})

    @property
    def n(self) -> int:
        return self.text.n

    @property
    def unique_length(self) -> int:
        return unique_length(self.k)


def build_Tk(k: int, verify: Optional[bool] = None) -> AdversaryState:
    bits = de_bruijn(k)
    text = "".join(phi(int(b)) for b in bits)
    tk = pack([0 if ch == "a" else 1 for ch in text], 2)
    if verify is None:
        verify = k <= VERIFY_MAX_K
    if verify and not windows_distinct(tk.symbols, unique_length(k)):
        raise CoverInputError(f"T_{k} has a repeated window of length {unique_length(k)}")
    return AdversaryState(
        k=k, text=tk, budget=query_budget(k), ledger=QueryLedger(ipm_touch_limit=unique_length(k))
    )


def _answer_long_ipm(x: Fragment, y: Fragment) -> Optional[Progression]:
    if len(y) > 2 * len(x):
        raise ContractViolation(f"IPM needs |Y| <= 2|X| (|X|={len(x)}, |Y|={len(y)})")
    if y.start <= x.start and x.end <= y.end:
        return Progression.singleton(x.start - y.start)
    return None


def answer(state: AdversaryState, query: PillarQuery) -> Any:
    """Answer one query as the adversary and record it; refuses past the budget."""
    if state.answered >= state.budget:
        raise BudgetExhausted(f"budget of {state.budget} queries reached")
    if query.kind == "ipm" and query.y is not None and len(query.x) >= state.unique_length:
        result = _answer_long_ipm(query.x, query.y)
    else:
        result = execute(state.backend, query)
    state.ledger.record(query, result)
    state.answered += 1
    return result


class AdversaryBackend:
    """PILLAR backend whose answers come from the adversary."""

    def __init__(self, state: AdversaryState):
        self.state = state

    def whole(self, text_id: str) -> Fragment:
        if text_id != TEXT_ID:
            raise CoverInputError(f"unknown text id {text_id!r}")
        return Fragment(TEXT_ID, 0, self.state.n)

    def extract(self, s: Fragment, i: int, r: int) -> tuple[int, ...]:
        return answer(self.state, PillarQuery("extract", s, i=i, r=r))

    def access(self, s: Fragment, i: int) -> int:
        return answer(self.state, PillarQuery("access", s, i=i))

    def length(self, s: Fragment) -> int:
        return answer(self.state, PillarQuery("length", s))

    def lcp(self, x: Fragment, y: Fragment) -> int:
        return answer(self.state, PillarQuery("lcp", x, y))

    def lcp_r(self, x: Fragment, y: Fragment) -> int:
        return answer(self.state, PillarQuery("lcp_r", x, y))

    def ipm(self, x: Fragment, y: Fragment) -> Optional[Progression]:
        return answer(self.state, PillarQuery("ipm", x, y))


class Completion(NamedTuple):
    cover: PackedText
    superprimitive: PackedText
    position: int


def finalize(state: AdversaryState) -> Completion:
    """Flip the smallest position that no answer depends on."""
    blocked = state.ledger.touched.get(TEXT_ID, set()) | state.ledger.witnesses.get(TEXT_ID, set())
    if len(blocked) >= state.n:
        raise HarnessMisuse("every position is touched; the query budget was exceeded")
    position = next(i for i in range(state.n) if i not in blocked)
    flipped = state.text.symbols.copy()
    flipped[position] ^= 1
    return Completion(state.text, pack(flipped, 2), position)


# ---------------------------------------------------------------------------
# Drivers
# ---------------------------------------------------------------------------


def random_queries_driver(backend: AdversaryBackend, rng: np.random.Generator) -> None:
    """Random queries whose touches stay within 45(k+1) positions each."""
    state = backend.state
    n, k = state.n, state.k
    span = 15 * (k + 1)
    t = backend.whole(TEXT_ID)
    kinds = ("access", "length", "lcp", "lcp_r", "extract", "ipm_short", "ipm_long")
    while True:
        kind = kinds[int(rng.integers(len(kinds)))]
        if kind == "access":
            backend.access(t, int(rng.integers(n)))
        elif kind == "length":
            backend.length(t)
        elif kind in ("lcp", "lcp_r"):
            i, j = (int(v) for v in rng.choice(n, size=2, replace=False))
            x = t.sub(i, min(n, i + int(rng.integers(1, 2 * span))))
            y = t.sub(j, min(n, j + int(rng.integers(1, 2 * span))))
            if kind == "lcp":
                backend.lcp(x, y)
            else:
                # distinct end positions keep the common suffix short
                if x.end == y.end:
                    y = t.sub(y.start, y.end - 1) if len(y) > 1 else t.sub(0, 1)
                backend.lcp_r(x, y)
        elif kind == "extract":
            i = int(rng.integers(n))
            backend.extract(t, i, min(n, i + int(rng.integers(0, span + 1))))
        else:
            m = int(rng.integers(1, state.unique_length)) if kind == "ipm_short" else int(
                rng.integers(state.unique_length, min(n, 2 * state.unique_length) + 1)
            )
            ylen = min(n, m + int(rng.integers(0, m + 1)))
            ys = int(rng.integers(0, n - ylen + 1))
            xs = int(rng.integers(0, n - m + 1))
            backend.ipm(t.sub(xs, xs + m), t.sub(ys, ys + ylen))


def cover_pipeline_driver(backend: AdversaryBackend, rng: np.random.Generator) -> None:
    """Run the cover pipeline (border groups, then short and long covers) on PILLAR queries."""
    covers_pillar(backend, TEXT_ID, c=short_cover_threshold(backend.state.n, 2))


DRIVERS: dict[str, Callable[[AdversaryBackend, np.random.Generator], None]] = {
    "random-queries": random_queries_driver,
    "cover-pipeline": cover_pipeline_driver,
}


def run_adversary(k: int, driver: str = "random-queries", seed: int = 0) -> dict:
    """
    Build T_k, let `driver` query it until the budget runs out, finalize and
    check both completions against the transcript.
    """
    if driver not in DRIVERS:
        raise CoverInputError(f"unknown driver {driver!r}; choose from {sorted(DRIVERS)}")
    state = build_Tk(k)
    backend = AdversaryBackend(state)
    exhausted = False
    try:
        DRIVERS[driver](backend, np.random.default_rng(seed))
    except BudgetExhausted:
        exhausted = True
    completion = finalize(state)
    transcript = state.ledger.transcript
    replay_cover = replay_transcript(transcript, DirectBackend({TEXT_ID: completion.cover}))
    replay_sp = replay_transcript(transcript, DirectBackend({TEXT_ID: completion.superprimitive}))
    n, q = state.n, state.budget
    touched = state.ledger.touched_count(TEXT_ID)
    touch_bound = 45 * q * (k + 1)
    report = {
        "k": k,
        "n": n,
        "q": q,
        "driver": driver,
        "seed": seed,
        "queries_issued": state.answered,
        "budget_exhausted": exhausted,
        "touched_count": touched,
        "touch_bound": touch_bound,
        "touch_bound_ok": touched < touch_bound if q else touched == 0,
        "flip_position": completion.position,
        "cover_check": is_cover_naive(completion.cover, 3),
        "superprimitive_check": shortest_cover_naive(completion.superprimitive) == n,
        "replay_cover_mismatches": len(replay_cover),
        "replay_superprimitive_mismatches": len(replay_sp),
        "lower_bound_constant_ok": (q >= LOWER_BOUND_C * n / math.log2(n)) if q else None,
        "query_counts": dict(state.ledger.counts),
        "long_ipm_queries": sum(
            1
            for entry in transcript
            if entry["kind"] == "ipm" and entry["x"][2] - entry["x"][1] >= state.unique_length
        ),
    }
    report["ok"] = bool(
        report["touch_bound_ok"]
        and report["cover_check"]
        and report["superprimitive_check"]
        and not replay_cover
        and not replay_sp
    )
    diagnostics.log(
        "adversary", f"k={k} driver={driver} answered={state.answered}/{q} ok={report['ok']}"
    )
    return report

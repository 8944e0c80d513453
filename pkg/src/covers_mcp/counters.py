"""
Operation counters used in place of wall-clock time.

An OpCounter belongs to one query session. Word-level routines add to
`word_ops`, index queries add to `query_units`, and every call is also
tallied by kind so tests can assert exact call counts.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field


@dataclass
class OpCounter:
    word_ops: int = 0
    query_units: int = 0
    calls: Counter = field(default_factory=Counter)

    def words(self, count: int, kind: str = "words") -> None:
        self.word_ops += count
        self.calls[kind] += 1

    def units(self, count: int, kind: str = "units") -> None:
        self.query_units += count
        self.calls[kind] += 1

    def merge(self, other: OpCounter) -> None:
        self.word_ops += other.word_ops
        self.query_units += other.query_units
        self.calls.update(other.calls)

    def as_dict(self) -> dict:
        return {
            "word_ops": self.word_ops,
            "query_units": self.query_units,
            "calls": dict(self.calls),
        }

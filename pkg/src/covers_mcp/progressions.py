"""
Arithmetic progressions and the CoverSet representation of all covers.
"""
from __future__ import annotations

import json
from bisect import bisect_right
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import CoverInputError
from .packed_text import PackedArray


@dataclass(frozen=True)
class Progression:
    """start, start+diff, ..., start+(count-1)*diff. Singletons carry diff 0."""

    start: int
    diff: int
    count: int

    def __post_init__(self) -> None:
        if self.start < 0 or self.count < 1 or self.diff < 0:
            raise CoverInputError(f"invalid progression {self}")
        if self.count == 1 and self.diff != 0:
            object.__setattr__(self, "diff", 0)
        if self.count > 1 and self.diff == 0:
            raise CoverInputError(f"progression with count {self.count} needs diff > 0")

    @classmethod
    def singleton(cls, value: int) -> Progression:
        return cls(value, 0, 1)

    @classmethod
    def from_positions(cls, positions: Sequence[int]) -> Progression:
        """Build from an ascending list that must form one progression."""
        if not positions:
            raise CoverInputError("empty position list")
        if len(positions) == 1:
            return cls.singleton(positions[0])
        diff = positions[1] - positions[0]
        for a, b in zip(positions, positions[1:]):
            if b - a != diff:
                raise CoverInputError(f"positions {list(positions)} are not a progression")
        return cls(positions[0], diff, len(positions))

    @property
    def last(self) -> int:
        return self.start + (self.count - 1) * self.diff

    def values(self) -> list[int]:
        return [self.start + k * self.diff for k in range(self.count)]

    def contains(self, value: int) -> bool:
        if value < self.start or value > self.last:
            return False
        return self.diff == 0 or (value - self.start) % self.diff == 0

    def shifted(self, offset: int) -> Progression:
        return Progression(self.start + offset, self.diff, self.count)

    def as_dict(self) -> dict:
        return {"start": self.start, "diff": self.diff, "count": self.count}


class CoverSet:
    """Sorted, pairwise-disjoint progressions of cover lengths of a length-n text."""

    def __init__(self, n: int, progs: Iterable[Progression]):
        self.n = n
        self.progs: tuple[Progression, ...] = tuple(progs)
        self._validate()
        self._starts = [p.start for p in self.progs]

    def _validate(self) -> None:
        prev = 0
        for p in self.progs:
            if p.start <= prev:
                raise CoverInputError("progressions are not sorted and disjoint")
            prev = p.last
        if prev > self.n:
            raise CoverInputError(f"cover length {prev} exceeds n={self.n}")
        if self.n >= 1 and prev != self.n:
            raise CoverInputError("n must be a member of every CoverSet")

    def contains(self, length: int) -> bool:
        if not 1 <= length <= self.n:
            raise CoverInputError(f"length {length} out of range [1, {self.n}]")
        k = bisect_right(self._starts, length) - 1
        return k >= 0 and self.progs[k].contains(length)

    def enumerate(self) -> list[int]:
        return [v for p in self.progs for v in p.values()]

    def to_bitmask(self) -> PackedArray:
        """Width-1 packed array of length n with bit ℓ−1 set iff ℓ is a cover length."""
        bits = np.zeros(self.n, dtype=np.uint64)
        for p in self.progs:
            if p.count == 1:
                bits[p.start - 1] = 1
            else:
                bits[p.start - 1 : p.last : p.diff] = 1
        return PackedArray.from_values(bits, width=1)

    def shortest(self) -> int:
        return self.progs[0].start

    def to_lines(self) -> str:
        return "\n".join(f"{p.start} {p.diff} {p.count}" for p in self.progs)

    def to_json(self) -> str:
        return json.dumps([p.as_dict() for p in self.progs])

    @classmethod
    def from_json(cls, n: int, payload: str) -> CoverSet:
        return cls(n, [Progression(**item) for item in json.loads(payload)])

    def __len__(self) -> int:
        return len(self.progs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CoverSet):
            return NotImplemented
        return self.n == other.n and self.progs == other.progs

    def __repr__(self) -> str:
        return f"CoverSet(n={self.n}, progs={list(self.progs)})"

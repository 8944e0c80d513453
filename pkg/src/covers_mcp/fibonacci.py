"""
Cover array of Fibonacci strings without looking at the string.

Fib_0 = b, Fib_1 = a, Fib_m = Fib_(m-1) Fib_(m-2); F_k = |Fib_k|, so
F_0 = F_1 = 1. Every prefix length either hits a corner case or reduces to
a shorter prefix by subtracting F_(k-1), giving O(log ℓ) steps.
"""
from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from typing import Optional

from .errors import CoverInputError
from .oracles import cover_array_breslauer
from .packed_text import PackedArray


@dataclass(frozen=True)
class FibTable:
    F: tuple[int, ...]

    def floor_index(self, length: int) -> int:
        """Largest k with F_k <= length."""
        k = bisect_right(self.F, length) - 1
        if k >= len(self.F) - 1:
            raise CoverInputError(f"table too short for length {length}")
        return k


def fib_table(limit: int) -> FibTable:
    """Fibonacci lengths F_0, F_1, ... until one exceeds `limit`."""
    F = [1, 1]
    while F[-1] <= limit:
        F.append(F[-1] + F[-2])
    return FibTable(tuple(F))


def fib_length(m: int) -> int:
    if m < 0:
        raise CoverInputError("m must be >= 0")
    a, b = 1, 1
    for _ in range(m):
        a, b = b, a + b
    return a


def fib_string(m: int) -> str:
    if m < 0:
        raise CoverInputError("m must be >= 0")
    prev, cur = "b", "a"
    if m == 0:
        return prev
    for _ in range(m - 1):
        prev, cur = cur, cur + prev
    return cur


def fib_cov(length: int, table: Optional[FibTable] = None) -> int:
    """Shortest cover of the length-`length` prefix of the infinite Fibonacci string."""
    if length < 1:
        raise CoverInputError("length must be >= 1")
    table = table if table is not None else fib_table(length)
    F = table.F
    while True:
        if length <= 2:
            return length
        k = table.floor_index(length)
        if length == F[k]:
            return 3 if k % 2 else 5
        if length + 1 == F[k + 1] and k + 1 >= 4:
            return length
        if k - 1 >= 4 and length == 2 * F[k - 1] - 1:
            return length
        length -= F[k - 1]


def fib_cover_array(m: int) -> list[int]:
    n = fib_length(m)
    table = fib_table(n)
    return [fib_cov(length, table) for length in range(1, n + 1)]


@dataclass
class PackedCoverArray:
    """Cover array stored as codes into a sorted value dictionary."""

    values: tuple[int, ...]
    codes: PackedArray

    def get(self, length: int) -> int:
        return self.values[self.codes.get(length - 1)]

    def __len__(self) -> int:
        return len(self.codes)

    def size_bits(self) -> int:
        return self.codes.size_bits()


def packed_fib_cover_array(m: int) -> PackedCoverArray:
    cov = fib_cover_array(m)
    values = tuple(sorted(set(cov)))
    rank = {v: i for i, v in enumerate(values)}
    width = max(len(values) - 1, 0).bit_length()
    return PackedCoverArray(values, PackedArray.from_values([rank[v] for v in cov], width=width))


def check_corollary(m: int) -> dict:
    """
    Structural report for Fib_m: distinct-value and superprimitive counts,
    and every ℓ in [5, F_m) with Cov[ℓ] + 1 == Cov[ℓ + 1].
    """
    if m < 5:
        raise CoverInputError("corollary checks need m >= 5")
    text = fib_string(m)
    cov = cover_array_breslauer(text).cov
    n = len(text)
    distinct = len(set(cov[1:]))
    superprimitive = sum(1 for length in range(1, n + 1) if cov[length] == length)
    counterexamples = [length for length in range(5, n) if cov[length] + 1 == cov[length + 1]]
    report = {
        "m": m,
        "n": n,
        "distinct_values": distinct,
        "superprimitive_prefixes": superprimitive,
        "counterexamples": counterexamples,
    }
    if m >= 8:
        report["linear_bounds_ok"] = all(m / 2 <= v <= 4 * m for v in (distinct, superprimitive))
    report["ok"] = not counterexamples and report.get("linear_bounds_ok", True)
    return report

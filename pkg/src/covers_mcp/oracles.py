"""
Reference algorithms: border array, Breslauer's online cover array, Z-array,
KMP and brute-force cover checks.

Everything here is linear or quadratic and exists to give ground truth for
the sublinear components. Functions accept a PackedText or a plain
sequence of symbols.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .packed_text import PackedText

TextLike = Union[PackedText, Sequence[int], str, bytes, np.ndarray]


def as_symbols(t: TextLike) -> np.ndarray:
    if isinstance(t, PackedText):
        return t.symbols
    if isinstance(t, str):
        return np.array([ord(ch) for ch in t], dtype=np.int64)
    return np.asarray(list(t) if isinstance(t, bytes) else t, dtype=np.int64).reshape(-1)


@dataclass
class BorderArray:
    """b[ℓ] = longest proper border of T[0..ℓ) for ℓ in [1..n]; b[0] is unused."""

    b: list[int]

    def __getitem__(self, length: int) -> int:
        return self.b[length]

    def as_list(self) -> list[int]:
        return self.b[1:]

    def chain(self, length: int) -> list[int]:
        """Border lengths of T[0..length), descending."""
        out = []
        k = self.b[length] if length else 0
        while k > 0:
            out.append(k)
            k = self.b[k]
        return out


@dataclass
class CovArray:
    """cov[ℓ] = shortest cover of T[0..ℓ) for ℓ in [1..n]; cov[0] is unused."""

    cov: list[int]

    def __getitem__(self, length: int) -> int:
        return self.cov[length]

    def as_list(self) -> list[int]:
        return self.cov[1:]

    def superprimitive(self) -> list[int]:
        return [length for length in range(1, len(self.cov)) if self.cov[length] == length]


def border_array(t: TextLike) -> BorderArray:
    s = as_symbols(t).tolist()
    n = len(s)
    b = [0] * (n + 1)
    k = 0
    for i in range(1, n):
        while k > 0 and s[i] != s[k]:
            k = b[k]
        if s[i] == s[k]:
            k += 1
        b[i + 1] = k
    return BorderArray(b)


def cover_array_breslauer(t: TextLike) -> CovArray:
    """
    Online shortest-cover array. reach[c] is the rightmost prefix end
    currently covered by the prefix of length c.
    """
    borders = border_array(t).b
    n = len(borders) - 1
    cov = [0] * (n + 1)
    reach = [0] * (n + 1)
    for i in range(1, n + 1):
        b = borders[i]
        if b > 0 and reach[cov[b]] >= i - cov[b]:
            cov[i] = cov[b]
        else:
            cov[i] = i
        reach[cov[i]] = i
    return CovArray(cov)


def smallest_period_array(t: TextLike) -> list[int]:
    """per[ℓ] = ℓ − b[ℓ]; per[0] is 0."""
    b = border_array(t).b
    return [length - b[length] for length in range(len(b))]


def z_array(t: TextLike) -> np.ndarray:
    """z[i] = lcp(T, T[i..]); z[0] = n."""
    s = as_symbols(t).tolist()
    n = len(s)
    z = [0] * n
    if n:
        z[0] = n
    left = right = 0
    for i in range(1, n):
        k = min(right - i, z[i - left]) if i < right else 0
        while i + k < n and s[k] == s[i + k]:
            k += 1
        z[i] = k
        if i + k > right:
            left, right = i, i + k
    return np.asarray(z, dtype=np.int64)


def find_occurrences(pattern: TextLike, text: TextLike) -> list[int]:
    """All start positions of `pattern` in `text` (KMP)."""
    p = as_symbols(pattern).tolist()
    s = as_symbols(text).tolist()
    m = len(p)
    if m == 0:
        return list(range(len(s) + 1))
    fail = border_array(p).b
    out = []
    k = 0
    for i, ch in enumerate(s):
        while k > 0 and ch != p[k]:
            k = fail[k]
        if ch == p[k]:
            k += 1
        if k == m:
            out.append(i - m + 1)
            k = fail[k]
    return out


def naive_occurrences(pattern: TextLike, text: TextLike) -> list[int]:
    p = as_symbols(pattern)
    s = as_symbols(text)
    m = len(p)
    if m == 0:
        return list(range(len(s) + 1))
    if m > len(s):
        return []
    hits = (sliding_window_view(s, m) == p).all(axis=1)
    return [int(i) for i in np.flatnonzero(hits)]


def _covered_by(occ: Sequence[int], length: int, n: int) -> bool:
    if len(occ) == 0 or occ[0] != 0 or occ[-1] + length != n:
        return False
    return all(b - a <= length for a, b in zip(occ, occ[1:]))


def is_cover_naive(t: TextLike, c: int) -> bool:
    """True iff every position of T lies inside an occurrence of T[0..c)."""
    s = as_symbols(t)
    n = len(s)
    if not 1 <= c <= n:
        return False
    return _covered_by(naive_occurrences(s[:c], s), c, n)


def all_covers_naive(t: TextLike) -> set[int]:
    s = as_symbols(t)
    n = len(s)
    if n == 0:
        return set()
    z = z_array(s)
    out = {n}
    for length in border_array(s).chain(n):
        occ = np.flatnonzero(z >= length).tolist()
        if _covered_by(occ, length, n):
            out.add(length)
    return out


def shortest_cover_naive(t: TextLike) -> int:
    return min(all_covers_naive(t))


def is_primitive_naive(t: TextLike) -> bool:
    """False iff T is a proper power U^k with k >= 2."""
    s = as_symbols(t)
    n = len(s)
    for d in range(1, n // 2 + 1):
        if n % d == 0 and np.array_equal(np.tile(s[:d], n // d), s):
            return False
    return n > 0


def square_prefix_halves_naive(t: TextLike) -> list[int]:
    s = as_symbols(t)
    return [
        j
        for j in range(1, len(s) // 2 + 1)
        if np.array_equal(s[:j], s[j : 2 * j]) and is_primitive_naive(s[:j])
    ]

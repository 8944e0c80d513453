"""
Bit-packed strings over an integer alphabet.

Symbols are stored LSB-first as one contiguous bitstream in numpy uint64
words; a symbol may straddle two words. Trailing bits of the last word are
always zero, so two packed texts with the same symbols have identical words.

PackedArray is the general fixed-width container (also used for the pref
array of the cover-array index and for bitmasks); PackedText adds the
alphabet and the string-level operations.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional, Sequence

import numpy as np

from .config import WORD_BITS
from .counters import OpCounter
from .errors import CoverInputError

_ALL_ONES = (1 << WORD_BITS) - 1


def _word_count(length: int, width: int) -> int:
    return (length * width + WORD_BITS - 1) // WORD_BITS


def _pack_values(values: np.ndarray, width: int) -> np.ndarray:
    """Pack non-negative integers of `width` bits into uint64 words."""
    length = len(values)
    words = np.zeros(_word_count(length, width), dtype=np.uint64)
    if length == 0 or width == 0:
        return words
    vals = values.astype(np.uint64)
    bitpos = np.arange(length, dtype=np.int64) * width
    idx = bitpos // WORD_BITS
    off = (bitpos % WORD_BITS).astype(np.uint64)
    np.bitwise_or.at(words, idx, vals << off)
    spill = (off + np.uint64(width)) > np.uint64(WORD_BITS)
    if spill.any():
        np.bitwise_or.at(
            words, idx[spill] + 1, vals[spill] >> (np.uint64(WORD_BITS) - off[spill])
        )
    return words


def _unpack_values(words: np.ndarray, length: int, width: int) -> np.ndarray:
    if length == 0 or width == 0:
        return np.zeros(length, dtype=np.uint64)
    bitpos = np.arange(length, dtype=np.int64) * width
    idx = bitpos // WORD_BITS
    off = (bitpos % WORD_BITS).astype(np.uint64)
    out = words[idx] >> off
    spill = (off + np.uint64(width)) > np.uint64(WORD_BITS)
    if spill.any():
        out[spill] |= words[idx[spill] + 1] << (np.uint64(WORD_BITS) - off[spill])
    return out & np.uint64((1 << width) - 1)


def _read_bits(words: np.ndarray, bitpos: int, width: int) -> int:
    w, off = divmod(bitpos, WORD_BITS)
    value = int(words[w]) >> off
    if off + width > WORD_BITS:
        value |= int(words[w + 1]) << (WORD_BITS - off)
    return value & ((1 << width) - 1)


@dataclass(eq=False)
class PackedArray:
    """Fixed-width unsigned integers packed into words; width 0 stores only zeros."""

    width: int
    length: int
    words: np.ndarray

    @classmethod
    def from_values(cls, values: Iterable[int], width: Optional[int] = None) -> PackedArray:
        arr = np.asarray(list(values) if not isinstance(values, np.ndarray) else values)
        arr = arr.astype(np.uint64) if arr.size else np.zeros(0, dtype=np.uint64)
        if width is None:
            width = int(arr.max()).bit_length() if arr.size else 0
        if width > WORD_BITS:
            raise CoverInputError(f"width {width} exceeds the word size")
        if arr.size and width < WORD_BITS and int(arr.max()) >> width:
            raise CoverInputError(f"value does not fit in {width} bits")
        return cls(width=width, length=len(arr), words=_pack_values(arr, width))

    def get(self, i: int) -> int:
        if not 0 <= i < self.length:
            raise CoverInputError(f"index {i} out of range [0, {self.length})")
        if self.width == 0:
            return 0
        return _read_bits(self.words, i * self.width, self.width)

    def to_numpy(self) -> np.ndarray:
        return _unpack_values(self.words, self.length, self.width)

    def size_bits(self) -> int:
        return self.length * self.width

    def __len__(self) -> int:
        return self.length

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PackedArray):
            return NotImplemented
        return (
            self.width == other.width
            and self.length == other.length
            and np.array_equal(self.words, other.words)
        )


def bits_for_sigma(sigma: int) -> int:
    return (max(sigma, 2) - 1).bit_length()


@dataclass(eq=False)
class PackedText:
    words: np.ndarray
    n: int
    sigma: int
    bits_per_symbol: int
    word_bits: int = WORD_BITS
    _symbols: Optional[np.ndarray] = field(default=None, repr=False)

    def access(self, i: int) -> int:
        if not 0 <= i < self.n:
            raise CoverInputError(f"index {i} out of range [0, {self.n})")
        return _read_bits(self.words, i * self.bits_per_symbol, self.bits_per_symbol)

    @cached_property
    def symbols(self) -> np.ndarray:
        """Unpacked symbols as int64, computed once."""
        if self._symbols is not None:
            return self._symbols
        return _unpack_values(self.words, self.n, self.bits_per_symbol).astype(np.int64)

    def unpack(self) -> list[int]:
        return [int(s) for s in self.symbols]

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PackedText):
            return NotImplemented
        return (
            self.n == other.n
            and self.sigma == other.sigma
            and np.array_equal(self.words, other.words)
        )

    def __hash__(self) -> int:
        return hash((self.n, self.sigma, self.words.tobytes()))


def pack(symbols: Sequence[int], sigma: int) -> PackedText:
    """Pack `symbols` (each in [0, sigma)) into a PackedText."""
    if sigma < 1:
        raise CoverInputError(f"sigma must be >= 1, got {sigma}")
    arr = np.asarray(symbols, dtype=np.int64).reshape(-1)
    if arr.size and (arr.min() < 0 or arr.max() >= sigma):
        bad = int(arr[(arr < 0) | (arr >= sigma)][0])
        raise CoverInputError(f"symbol {bad} outside alphabet [0, {sigma})")
    b = bits_for_sigma(sigma)
    return PackedText(
        words=_pack_values(arr, b), n=int(arr.size), sigma=sigma, bits_per_symbol=b,
        _symbols=arr.copy(),
    )


def alphabet_of(data: Sequence) -> list:
    """Distinct symbols in first-occurrence order."""
    return list(dict.fromkeys(data))


def pack_string(text, sigma: Optional[int] = None) -> tuple[PackedText, list]:
    """
    Pack a str or bytes value, remapping distinct symbols to [0, σ) in
    first-occurrence order. Returns the text and the alphabet used.
    """
    alphabet = alphabet_of(text)
    if sigma is None:
        sigma = max(len(alphabet), 1)
    elif sigma < len(alphabet):
        raise CoverInputError(f"input has {len(alphabet)} distinct symbols, sigma={sigma}")
    rank = {a: i for i, a in enumerate(alphabet)}
    return pack([rank[ch] for ch in text], sigma), alphabet


def to_string(t: PackedText, alphabet: Sequence) -> str:
    return "".join(str(alphabet[s]) for s in t.unpack())


def extract_packed(
    t: PackedText, i: int, j: int, counter: Optional[OpCounter] = None
) -> PackedText:
    """
    Packed copy of T[i..j] (inclusive).

    Each output word is assembled from two source words with shifts, so the
    cost is one word operation per output word plus one.
    """
    if not (0 <= i <= j + 1 <= t.n):
        raise CoverInputError(f"bad extract range [{i}..{j}] for n={t.n}")
    m = j - i + 1
    b = t.bits_per_symbol
    out_words = _word_count(m, b)
    if counter is not None:
        counter.words(out_words + 1, "extract")
    if m == 0:
        return PackedText(np.zeros(0, dtype=np.uint64), 0, t.sigma, b)
    w0, shift = divmod(i * b, WORD_BITS)
    src = t.words[w0 : w0 + out_words + 1]
    if len(src) < out_words + 1:
        src = np.concatenate([src, np.zeros(out_words + 1 - len(src), dtype=np.uint64)])
    if shift == 0:
        out = src[:out_words].copy()
    else:
        s = np.uint64(shift)
        out = (src[:out_words] >> s) | (src[1 : out_words + 1] << (np.uint64(WORD_BITS) - s))
    rem = (m * b) % WORD_BITS
    if rem:
        out[-1] &= np.uint64((1 << rem) - 1)
    return PackedText(out, m, t.sigma, b)


def factor_code(t: PackedText, start: int, length: int) -> int:
    """
    Big-endian base-(σ+1) code of T[start..start+length).

    Positions outside [0, n) read as the sentinel σ, so codes of padded
    windows never collide with codes of in-text factors.
    """
    base = t.sigma + 1
    if length < 0:
        raise CoverInputError("negative factor length")
    if length * t.bits_per_symbol > WORD_BITS or base**length > _ALL_ONES + 1:
        raise CoverInputError(f"factor of length {length} does not fit one word code")
    code = 0
    for p in range(start, start + length):
        code = code * base + (t.access(p) if 0 <= p < t.n else t.sigma)
    return code

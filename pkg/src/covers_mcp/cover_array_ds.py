"""
Constant-time shortest-cover-of-prefix queries from a sublinear-space index.

Components:
  - square_halves   j_1 < ... < j_t, half lengths of primitively rooted square prefixes
  - aperiodic_lens  p_i, the shortest aperiodic prefix of T[0..2j_i) of length >= j_i
  - sp              n bits, sp[ℓ] = 1 iff T[0..ℓ) is superprimitive
  - pref            n entries of ceil(log2 t) bits; for sp[ℓ] = 0, pref[ℓ] = i − 1
                    where j_i is the second occurrence of the shortest cover of T[0..ℓ)
  - the IPM index of T

A query with sp[ℓ] = 0 asks one IPM question: the rightmost occurrence k of
T[0..p_i) in T[max(0, ℓ−2p_i+1) .. ℓ); the answer is ℓ − k.

Persisted blob layout (little-endian, all integers u64 unless noted):

    magic     4 bytes  b"CVRI"
    version   u16      BLOB_VERSION
    reserved  u16      0
    n, sigma, t, pref_width
    square_halves      t values
    aperiodic_lens     t values
    sp words           ceil(n / 64) values
    pref words         ceil(n * pref_width / 64) values
    text words         ceil(n * bits_per_symbol / 64) values

The Z-array and border array of the IPM index are rebuilt on load.
"""
from __future__ import annotations

import math
import struct
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from . import diagnostics
from .config import SPACE_C1, SPACE_C2, WORD_BITS
from .counters import OpCounter
from .errors import CoverInputError, IndexBuildError
from .ipm_index import TextIndex, build_index, ipm_runs
from .oracles import CovArray, cover_array_breslauer
from .packed_text import PackedArray, PackedText, _word_count, bits_for_sigma

BLOB_MAGIC = b"CVRI"
BLOB_VERSION = 1
_HEADER = struct.Struct("<4sHH4Q")
GOLDEN_RATIO = (1 + 5**0.5) / 2


def _periods(idx: TextIndex) -> np.ndarray:
    b = np.asarray(idx.borders.b, dtype=np.int64)
    return np.arange(len(b), dtype=np.int64) - b


def square_prefix_halves(t: PackedText, idx: Optional[TextIndex] = None) -> list[int]:
    """Half lengths j with T[0..2j) = X·X and X primitive, ascending."""
    idx = idx if idx is not None else build_index(t)
    n = t.n
    if n < 2:
        return []
    per = _periods(idx)
    j = np.arange(1, n // 2 + 1)
    square = idx.z[j] >= j
    primitive = (per[j] == j) | (j % per[j] != 0)
    return [int(v) for v in j[square & primitive]]


def aperiodic_prefix_for(t: PackedText, j: int, idx: Optional[TextIndex] = None) -> int:
    """Smallest p >= j with T[0..p) aperiodic (2·per[p] > p)."""
    idx = idx if idx is not None else build_index(t)
    if not 1 <= j <= t.n:
        raise CoverInputError(f"half length {j} out of range")
    b = idx.borders.b
    for p in range(j, min(2 * j, t.n + 1)):
        if 2 * (p - b[p]) > p:
            return p
    raise IndexBuildError(f"no aperiodic prefix of length in [{j}, {2 * j}) exists")


@dataclass(eq=False)
class CoverArrayIndex:
    n: int
    sigma: int
    square_halves: list[int]
    aperiodic_lens: list[int]
    sp: PackedArray
    pref: PackedArray
    ipm: TextIndex

    @property
    def t(self) -> int:
        return len(self.square_halves)

    @property
    def text(self) -> PackedText:
        return self.ipm.text

    def superprimitive(self, length: int) -> bool:
        return self.sp.get(length - 1) == 1


def build_cover_index(t: PackedText, cov: Optional[CovArray] = None) -> CoverArrayIndex:
    if t.n < 1:
        raise CoverInputError("cannot index an empty text")
    idx = build_index(t)
    cov = cov if cov is not None else cover_array_breslauer(t)
    n = t.n
    halves = square_prefix_halves(t, idx)
    aperiodic = [aperiodic_prefix_for(t, j, idx) for j in halves]
    cov_arr = np.asarray(cov.cov[1:], dtype=np.int64)
    lengths = np.arange(1, n + 1, dtype=np.int64)
    sp_bits = (cov_arr == lengths).astype(np.uint64)

    pref_vals = np.zeros(n, dtype=np.int64)
    proper = np.flatnonzero(sp_bits == 0)
    if proper.size:
        reach = np.maximum.accumulate(idx.z[1:])
        wanted = cov_arr[proper]
        second = np.searchsorted(reach, wanted, side="left") + 1
        if (second >= n).any():
            raise IndexBuildError("shortest cover without a second occurrence")
        half_arr = np.asarray(halves, dtype=np.int64)
        slot = np.searchsorted(half_arr, second)
        found = half_arr[np.minimum(slot, len(halves) - 1)]
        if (slot >= len(halves)).any() or (found != second).any():
            raise IndexBuildError("second occurrence of a shortest cover is not a square half")
        if (wanted > 2 * second).any():
            raise IndexBuildError("shortest cover is not a prefix of its square prefix")
        pref_vals[proper] = slot
    width = max(len(halves) - 1, 0).bit_length()
    index = CoverArrayIndex(
        n=n,
        sigma=t.sigma,
        square_halves=halves,
        aperiodic_lens=aperiodic,
        sp=PackedArray.from_values(sp_bits, width=1),
        pref=PackedArray.from_values(pref_vals, width=width),
        ipm=idx,
    )
    diagnostics.log("cover_index", f"built n={n} sigma={t.sigma} t={len(halves)}")
    return index


class CovQuery(NamedTuple):
    value: int
    ipm_queries: int
    occurrences: int


def query_cov_detail(
    index: CoverArrayIndex, length: int, session: Optional[OpCounter] = None
) -> CovQuery:
    if not 1 <= length <= index.n:
        raise CoverInputError(f"length {length} out of range [1, {index.n}]")
    if index.superprimitive(length):
        return CovQuery(length, 0, 0)
    p = index.aperiodic_lens[index.pref.get(length - 1)]
    lo = max(0, length - 2 * p + 1)
    runs = ipm_runs(index.ipm, index.ipm.fragment(0, p), index.ipm.fragment(lo, length), session)
    found = int(runs.counts.sum())
    if found == 0:
        raise IndexBuildError(f"no occurrence of the aperiodic prefix before {length}")
    k = lo + int(runs.starts[-1] + (runs.counts[-1] - 1) * runs.diffs[-1])
    return CovQuery(length - k, 1, found)


def query_cov(index: CoverArrayIndex, length: int, session: Optional[OpCounter] = None) -> int:
    """Shortest cover length of T[0..length)."""
    return query_cov_detail(index, length, session).value


def cover_array(index: CoverArrayIndex) -> list[int]:
    return [query_cov(index, length) for length in range(1, index.n + 1)]


# ---------------------------------------------------------------------------
# Space accounting
# ---------------------------------------------------------------------------


def t_bound(n: int) -> int:
    """Upper bound on the number of square halves."""
    return (math.ceil(math.log(n, GOLDEN_RATIO)) if n > 1 else 0) + 2


def _word_size(n: int) -> int:
    return max(1, math.ceil(math.log2(max(n, 2))))


def index_size_bits(index: CoverArrayIndex) -> dict:
    table_bits = 2 * index.t * _word_size(index.n)
    text_bits = index.n * bits_for_sigma(index.sigma)
    sizes = {
        "sp": index.sp.size_bits(),
        "pref": index.pref.size_bits(),
        "tables": table_bits,
        "text": text_bits,
    }
    sizes["total"] = sum(sizes.values())
    sizes["words"] = sizes["total"] / _word_size(index.n)
    return sizes


def space_bound_words(n: int, sigma: int) -> float:
    """SPACE_C1·n(log2 σ + log2 log2 n)/log2 n + SPACE_C2, in words of ceil(log2 n) bits."""
    log_n = math.log2(max(n, 4))
    return SPACE_C1 * n * (math.log2(max(sigma, 1)) + math.log2(log_n)) / log_n + SPACE_C2


# ---------------------------------------------------------------------------
# Persistence
# ---------------------------------------------------------------------------


def _u64(values) -> bytes:
    return np.asarray(values, dtype="<u8").tobytes()


def save_index(index: CoverArrayIndex) -> bytes:
    header = _HEADER.pack(
        BLOB_MAGIC, BLOB_VERSION, 0, index.n, index.sigma, index.t, index.pref.width
    )
    return b"".join(
        [
            header,
            _u64(index.square_halves),
            _u64(index.aperiodic_lens),
            _u64(index.sp.words),
            _u64(index.pref.words),
            _u64(index.text.words),
        ]
    )


def load_index(blob: bytes) -> CoverArrayIndex:
    if len(blob) < _HEADER.size:
        raise CoverInputError("index blob is truncated")
    magic, version, _, n, sigma, t, width = _HEADER.unpack_from(blob, 0)
    if magic != BLOB_MAGIC:
        raise CoverInputError("not a cover-array index blob")
    if version != BLOB_VERSION:
        raise CoverInputError(f"unsupported index blob version {version}")
    bits = bits_for_sigma(sigma)
    sizes = [t, t, _word_count(n, 1), _word_count(n, width), _word_count(n, bits)]
    expected = _HEADER.size + 8 * sum(sizes)
    if len(blob) != expected:
        raise CoverInputError(f"index blob has {len(blob)} bytes, expected {expected}")
    parts = []
    offset = _HEADER.size
    for count in sizes:
        parts.append(np.frombuffer(blob, dtype="<u8", count=count, offset=offset).astype(np.uint64))
        offset += 8 * count
    halves, aperiodic, sp_words, pref_words, text_words = parts
    text = PackedText(words=text_words, n=n, sigma=sigma, bits_per_symbol=bits, word_bits=WORD_BITS)
    return CoverArrayIndex(
        n=n,
        sigma=sigma,
        square_halves=[int(v) for v in halves],
        aperiodic_lens=[int(v) for v in aperiodic],
        sp=PackedArray(width=1, length=n, words=sp_words),
        pref=PackedArray(width=width, length=n, words=pref_words),
        ipm=build_index(text),
    )

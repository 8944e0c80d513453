#!/usr/bin/env python3
"""
Data Processing Layer Tests: cover_algorithms

Short covers from the deduplicated window set, long covers from border
groups, and the combined CoverSet against the brute-force oracle.
"""

import os
import sys
import unittest

import numpy as np

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', '..', 'src'))

from covers_mcp.counters import OpCounter
from covers_mcp.cover_algorithms import (
    border_groups_pillar,
    build_factor_set,
    covers,
    covers_pillar,
    covers_with_stats,
    is_superprimitive,
    long_covers,
    occurrences_of_border,
    occurrences_pillar,
    prefix_is_cover,
    short_cover_threshold,
    short_covers,
    shortest_cover,
)
from covers_mcp.errors import CoverInputError
from covers_mcp.ipm_index import border_groups, build_index
from covers_mcp.oracles import (
    all_covers_naive,
    border_array,
    is_cover_naive,
    naive_occurrences,
)
from covers_mcp.packed_text import pack, pack_string
from covers_mcp.pillar import DirectBackend, InstrumentedBackend
from covers_mcp.progressions import Progression

FIB7 = "abaababaabaababaababa"
SHORT_RUN_TEXT = "aabaabaabaabaa" + "abaabaabaa" + "abaabaabaabaa"


def random_cover_rich(rng, n, sigma=2):
    """Periodic text with an occasional flipped symbol."""
    period = int(rng.integers(1, 8))
    s = np.resize(rng.integers(0, sigma, size=period), n)
    if rng.random() < 0.25:
        s[int(rng.integers(0, n))] = int(rng.integers(0, sigma))
    return s


class TestThreshold(unittest.TestCase):

    def test_values(self):
        self.assertEqual(short_cover_threshold(2 ** 24, 2), 2)
        self.assertEqual(short_cover_threshold(2 ** 24, 2, sentinel=False), 4)
        self.assertEqual(short_cover_threshold(728, 2), 0)
        self.assertEqual(short_cover_threshold(729, 2), 1)
        self.assertEqual(short_cover_threshold(10, 1), 0)


class TestShortCovers(unittest.TestCase):

    def test_factor_set_unary(self):
        t, _ = pack_string("aaaa")
        ctx = build_factor_set(t, 1)
        self.assertEqual(ctx.window_count, 4)
        self.assertEqual(ctx.distinct, 3)
        self.assertEqual(ctx.rows.shape, (3, 3))

    def test_factor_set_rejects_zero(self):
        t, _ = pack_string("abab")
        with self.assertRaises(CoverInputError):
            build_factor_set(t, 0)

    def test_factor_set_wide_windows(self):
        # codes no longer fit 62 bits, windows are deduplicated by content
        t = pack([0, 1] * 40, 2)
        ctx = build_factor_set(t, 25)
        self.assertIsNone(ctx.codes)
        self.assertEqual(ctx.window_count, 4)

    def test_short_covers_periodic(self):
        t, _ = pack_string("abaabaabaaba")
        ctx = build_factor_set(t, 3)
        self.assertEqual(short_covers(t, ctx), {3})

    def test_short_covers_counts_work(self):
        t, _ = pack_string("abaabaabaaba")
        counter = OpCounter()
        ctx = build_factor_set(t, 3, counter)
        short_covers(t, ctx, counter)
        self.assertEqual(counter.calls["window"], 1)
        self.assertEqual(counter.calls["border_check"], 3)
        self.assertGreater(counter.word_ops, 0)

    def test_against_naive_for_every_threshold(self):
        rng = np.random.default_rng(41)
        for _ in range(150):
            n = int(rng.integers(1, 50))
            t = pack(random_cover_rich(rng, n), 2)
            expected = {x for x in all_covers_naive(t) if x <= 4}
            for c in range(1, 5):
                ctx = build_factor_set(t, c)
                got = short_covers(t, ctx)
                self.assertEqual(got, {x for x in expected if x <= c}, t.unpack())


class TestLongCovers(unittest.TestCase):

    def test_unary(self):
        t, _ = pack_string("aaaa")
        idx = build_index(t)
        self.assertEqual(
            long_covers(t, idx, 0),
            [Progression(1, 0, 1), Progression(2, 1, 2), Progression(4, 0, 1)],
        )

    def test_fibonacci(self):
        t, _ = pack_string(FIB7)
        idx = build_index(t)
        self.assertEqual(
            long_covers(t, idx, 0),
            [Progression(3, 0, 1), Progression(8, 0, 1), Progression(21, 0, 1)],
        )
        self.assertEqual(long_covers(t, idx, 3), [Progression(8, 0, 1), Progression(21, 0, 1)])

    def test_n_not_repeated_when_short(self):
        t, _ = pack_string("aaaa")
        self.assertEqual(long_covers(t, build_index(t), 4), [])

    def test_short_run_limits_group(self):
        # group [8, 16) holds borders 8, 11, 14; the middle run of "aabaabaa"
        # occurrences has length 2, so 14 drops out
        text = SHORT_RUN_TEXT
        t, _ = pack_string(text)
        self.assertEqual(
            long_covers(t, build_index(t), 0),
            [Progression(5, 0, 1), Progression(8, 3, 2), Progression(37, 0, 1)],
        )
        self.assertEqual(sorted(all_covers_naive(text)), [5, 8, 11, 37])

    def test_index_mismatch(self):
        t, _ = pack_string("abab")
        u, _ = pack_string("abba")
        with self.assertRaises(CoverInputError):
            long_covers(t, build_index(u), 0)

    def test_occurrences_of_border(self):
        t, _ = pack_string(FIB7)
        progs = occurrences_of_border(build_index(t), 8)
        self.assertEqual([v for p in progs for v in p.values()], [0, 8, 13])

    def test_workers_give_same_answer(self):
        t = pack(np.resize([0, 0, 1, 0, 0, 1, 0], 3000), 2)
        idx = build_index(t)
        self.assertEqual(long_covers(t, idx, 0, workers=4), long_covers(t, idx, 0, workers=1))


class TestCoverSet(unittest.TestCase):

    def test_fibonacci(self):
        t, _ = pack_string(FIB7)
        self.assertEqual(covers(t).enumerate(), [3, 8, 21])
        self.assertEqual(shortest_cover(t), 3)
        self.assertFalse(is_superprimitive(t))
        self.assertTrue(prefix_is_cover(t, 8))
        self.assertFalse(prefix_is_cover(t, 5))

    def test_single_symbol(self):
        t, _ = pack_string("a")
        self.assertEqual(covers(t).enumerate(), [1])
        self.assertTrue(is_superprimitive(t))

    def test_empty_rejected(self):
        with self.assertRaises(CoverInputError):
            covers(pack([], 2))

    def test_negative_threshold(self):
        t, _ = pack_string("ab")
        with self.assertRaises(CoverInputError):
            covers_with_stats(t, force_c=-1)

    def test_forced_threshold_matches_naive(self):
        rng = np.random.default_rng(43)
        for _ in range(200):
            sigma = int(rng.integers(2, 4))
            n = int(rng.integers(1, 70))
            s = random_cover_rich(rng, n, sigma)
            expected = sorted(all_covers_naive(s))
            t = pack(s, sigma)
            for c in (0, 1, 2, 5, n):
                run = covers_with_stats(t, force_c=c)
                self.assertEqual(run.cover_set.enumerate(), expected, (s.tolist(), c))

    def test_progression_count_logarithmic(self):
        t = pack([0] * 4096, 1)
        cs = covers_with_stats(t, force_c=0).cover_set
        self.assertEqual(cs.enumerate(), list(range(1, 4097)))
        self.assertLessEqual(len(cs), 2 * 12 + 2)

    def test_run_stats(self):
        t, _ = pack_string(FIB7)
        run = covers_with_stats(t, force_c=2)
        stats = run.as_dict()
        self.assertEqual(stats["n"], 21)
        self.assertEqual(stats["c"], 2)
        self.assertEqual(stats["window_count"], 11)
        self.assertEqual(stats["group_count"], 3)
        self.assertGreater(stats["long_query_units"], 0)
        self.assertEqual(stats["progressions"][-1], {"start": 21, "diff": 0, "count": 1})


def min_run(positions, p):
    """Length of the shortest maximal run of positions at distance p."""
    runs, run = [], 1
    for a, b in zip(positions, positions[1:]):
        if b - a == p:
            run += 1
        else:
            runs.append(run)
            run = 1
    runs.append(run)
    return min(runs)


def structured_texts(seed, count):
    rng = np.random.default_rng(seed)
    yield np.array([0 if ch == "a" else 1 for ch in SHORT_RUN_TEXT])
    for _ in range(count):
        sigma = int(rng.integers(2, 5))
        yield random_cover_rich(rng, int(rng.integers(20, 300)), sigma)


class TestBorderGroupStructure(unittest.TestCase):

    def test_covers_are_a_prefix_of_each_group(self):
        for s in structured_texts(47, 150):
            for d, group in border_groups(pack(s, int(s.max()) + 1)):
                flags = [is_cover_naive(s, b) for b in group.values()]
                self.assertEqual(flags, sorted(flags, reverse=True), (s.tolist(), d))

    def test_shortest_run_decides_covers_in_group(self):
        exercised = 0
        for s in structured_texts(53, 150):
            for d, group in border_groups(pack(s, int(s.max()) + 1)):
                values = group.values()
                if group.count < 3 or not all(is_cover_naive(s, b) for b in values[:2]):
                    continue
                delta = min_run(naive_occurrences(s[: values[0]], s), group.diff)
                for j, b in enumerate(values, start=1):
                    self.assertEqual(is_cover_naive(s, b), j <= delta, (s.tolist(), d, j))
                if delta < group.count:
                    self.assertTrue(is_cover_naive(s, values[delta - 1]))
                    self.assertFalse(is_cover_naive(s, values[delta]))
                    exercised += 1
        self.assertGreater(exercised, 0)

    def test_progressions_are_border_lengths(self):
        for s in structured_texts(59, 100):
            n = len(s)
            t = pack(s, int(s.max()) + 1)
            allowed = set(border_array(s).chain(n)) | {n}
            for c in (0, 1, 2):
                for p in covers_with_stats(t, force_c=c).cover_set.progs:
                    self.assertLessEqual(set(p.values()), allowed, (s.tolist(), c, p))


class TestCoversPillar(unittest.TestCase):

    def test_fibonacci(self):
        t, _ = pack_string(FIB7)
        backend = DirectBackend({"T": t})
        groups = border_groups_pillar(backend, "T")
        self.assertEqual({d: g.values() for d, g in groups.items()}, {1: [1], 2: [3], 8: [8]})
        for c in (0, 1, 2, 3, 21):
            self.assertEqual(covers_pillar(backend, "T", c).enumerate(), [3, 8, 21])

    def test_occurrences_from_aligned_windows(self):
        t, _ = pack_string(FIB7)
        backend = DirectBackend({"T": t})
        whole = backend.whole("T")
        self.assertEqual(occurrences_pillar(backend, whole, 8), [0, 8, 13])
        self.assertEqual(occurrences_pillar(backend, whole, 3), [0, 3, 5, 8, 11, 13, 16, 18])

    def test_short_run_limits_group(self):
        t, _ = pack_string(SHORT_RUN_TEXT)
        self.assertEqual(
            covers_pillar(DirectBackend({"T": t}), "T").enumerate(), [5, 8, 11, 37]
        )

    def test_single_symbol_and_bad_threshold(self):
        backend = DirectBackend({"T": pack([0], 1)})
        self.assertEqual(covers_pillar(backend, "T").enumerate(), [1])
        with self.assertRaises(CoverInputError):
            covers_pillar(backend, "T", -1)

    def test_groups_match_period_query(self):
        for s in structured_texts(61, 80):
            t = pack(s, int(s.max()) + 1)
            groups = border_groups_pillar(DirectBackend({"T": t}), "T")
            self.assertEqual(groups, border_groups(t).groups, s.tolist())

    def test_matches_word_ram_pipeline(self):
        for s in structured_texts(67, 120):
            t = pack(s, int(s.max()) + 1)
            expected = covers(t).enumerate()
            for c in (0, 1, 2):
                got = covers_pillar(DirectBackend({"T": t}), "T", c).enumerate()
                self.assertEqual(got, expected, (s.tolist(), c))

    def test_only_pillar_queries(self):
        t, _ = pack_string(SHORT_RUN_TEXT)
        backend = InstrumentedBackend(DirectBackend({"T": t}))
        covers_pillar(backend, "T")
        self.assertLessEqual(set(backend.ledger.counts), {"length", "ipm", "lcp_r"})
        for entry in backend.ledger.transcript:
            if entry["kind"] == "ipm":
                x, y = entry["x"], entry["y"]
                self.assertLessEqual(y[2] - y[1], 2 * (x[2] - x[1]))


if __name__ == '__main__':
    unittest.main()

#!/usr/bin/env python3
"""
Data Processing Layer Tests: families and bench

Text generators and the counted benchmark rows with their scaling verdict.
"""

import os
import sys
import unittest

import numpy as np

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', '..', 'src'))
os.environ.setdefault('COVERS_MCP_QUIET', '1')

from covers_mcp.bench import (
    check_scaling,
    long_units_bound,
    progression_bound,
    run_bench,
    short_ops_bound,
)
from covers_mcp.errors import CoverInputError
from covers_mcp.families import (
    FAMILIES,
    block_text,
    fibonacci_text,
    random_periodic_text,
    random_text,
)
from covers_mcp.oracles import border_array, cover_array_breslauer


class TestFamilies(unittest.TestCase):

    def test_block_text(self):
        self.assertEqual(block_text(1), "aabaaabaa")
        self.assertEqual(cover_array_breslauer(block_text(1)).as_list()[-2:], [4, 5])
        with self.assertRaises(CoverInputError):
            block_text(0)

    def test_random_text(self):
        s = random_text(100, 3, np.random.default_rng(0))
        self.assertEqual(len(s), 100)
        self.assertTrue(((s >= 0) & (s < 3)).all())
        with self.assertRaises(CoverInputError):
            random_text(-1, 2, np.random.default_rng(0))

    def test_unbordered_periodic(self):
        rng = np.random.default_rng(4)
        s = random_periodic_text(200, 2, 8, rng, unbordered=True)
        self.assertTrue((s[8:] == s[:-8]).all())
        self.assertEqual(border_array(s[:8])[8], 0)
        self.assertEqual(sorted(border_array(s).chain(200)), list(range(8, 200, 8)))

    def test_unbordered_needs_two_symbols(self):
        with self.assertRaises(CoverInputError):
            random_periodic_text(10, 1, 4, np.random.default_rng(0), unbordered=True)

    def test_fibonacci_text(self):
        self.assertEqual(fibonacci_text(4).tolist(), [0, 1, 0, 0, 1])

    def test_registry(self):
        self.assertEqual(sorted(FAMILIES), ["random", "random-periodic"])
        s = FAMILIES["random-periodic"](64, 2, np.random.default_rng(1))
        self.assertEqual(len(s), 64)


class TestBench(unittest.TestCase):

    def test_bounds(self):
        self.assertEqual(long_units_bound(1024, 1), 8 * 1024 * 2)
        self.assertEqual(long_units_bound(1024, 4), 8 * 1024 / 2)
        self.assertEqual(short_ops_bound(1024, 2, 10), 4 * (512 + 120 + 2))
        self.assertEqual(progression_bound(1023), 24)

    def test_rows_and_scaling(self):
        rows = run_bench([10, 11, 12], sigma=2, seed=5)
        self.assertEqual([r["n"] for r in rows], [1024, 2048, 4096])
        self.assertNotIn("long_ratio", rows[0])
        for row in rows:
            self.assertEqual(row["c"], 1)
            self.assertLessEqual(row["long_query_units"], row["units_bound"])
            self.assertLessEqual(row["short_word_ops"], row["short_ops_bound"])
        verdict = check_scaling(rows)
        self.assertTrue(verdict["ok"], verdict)
        self.assertEqual(verdict["sizes"], [1024, 2048, 4096])

    def test_same_seed_same_rows(self):
        self.assertEqual(run_bench([10], seed=2), run_bench([10], seed=2))

    def test_unknown_family(self):
        with self.assertRaises(CoverInputError):
            run_bench([10], family="fibonacci")

    def test_violations_reported(self):
        rows = [
            {"n": 8, "long_query_units": 100, "units_bound": 10, "short_word_ops": 1,
             "short_ops_bound": 5, "progressions": 1, "progression_bound": 10},
            {"n": 16, "long_query_units": 100, "units_bound": 1000, "short_word_ops": 1,
             "short_ops_bound": 5, "progressions": 1, "progression_bound": 10,
             "long_ratio": 1.0, "short_ratio": 2.0},
        ]
        verdict = check_scaling(rows)
        self.assertFalse(verdict["ok"])
        self.assertEqual(len(verdict["violations"]), 2)


if __name__ == '__main__':
    unittest.main()

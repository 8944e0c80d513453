#!/usr/bin/env python3
"""
Server Intelligence Layer Tests: cover arrays of structured families

Block texts whose cover arrays end in m+1 distinct large values, and
Fibonacci strings up to length 10^5 where the closed-form recursion, the
online algorithm and the index must agree.
"""

import os
import sys
import unittest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', '..', 'src'))
os.environ.setdefault('COVERS_MCP_QUIET', '1')

from covers_mcp.cover_array_ds import build_cover_index, cover_array, query_cov
from covers_mcp.families import block_text, fibonacci_text
from covers_mcp.fibonacci import check_corollary, fib_cover_array, fib_length, fib_string
from covers_mcp.oracles import cover_array_breslauer
from covers_mcp.packed_text import pack, pack_string

FIB_LENGTH_LIMIT = 10 ** 5
FIB_M = [m for m in range(40) if fib_length(m) <= FIB_LENGTH_LIMIT]


class TestBlockTexts(unittest.TestCase):

    def test_tail_values(self):
        for m in (10, 100, 1000):
            text = block_text(m)
            tail = list(range(3 * m + 1, 4 * m + 2))
            self.assertEqual(cover_array_breslauer(text).as_list()[-(m + 1):], tail, m)
            t, _ = pack_string(text)
            index = build_cover_index(t)
            self.assertEqual([query_cov(index, length) for length in range(t.n - m, t.n + 1)], tail)


class TestFibonacciFamilies(unittest.TestCase):

    def test_range_reaches_the_length_limit(self):
        self.assertEqual(FIB_M[-1], 24)
        self.assertEqual(fib_length(24), 75025)

    def test_recursion_matches_breslauer(self):
        for m in FIB_M:
            with self.subTest(m=m):
                self.assertEqual(fib_cover_array(m), cover_array_breslauer(fib_string(m)).as_list())

    def test_corner_values(self):
        cov = [0] + fib_cover_array(FIB_M[-1])
        n = len(cov) - 1
        for k in range(3, FIB_M[-1] + 1):
            self.assertEqual(cov[fib_length(k)], 3 if k % 2 else 5, k)
        for k in range(4, FIB_M[-1] + 1):
            self.assertEqual(cov[fib_length(k) - 1], fib_length(k) - 1, k)
            if 2 * fib_length(k) - 1 <= n:
                self.assertEqual(cov[2 * fib_length(k) - 1], 2 * fib_length(k) - 1, k)

    def test_index_matches_recursion(self):
        index = build_cover_index(pack(fibonacci_text(20), 2))
        self.assertEqual(cover_array(index), fib_cover_array(20))

    def test_corollary_sweep(self):
        for m in FIB_M:
            if m < 5:
                continue
            with self.subTest(m=m):
                report = check_corollary(m)
                self.assertEqual(report["counterexamples"], [])
                self.assertTrue(report["ok"], report)


if __name__ == '__main__':
    unittest.main()

#!/usr/bin/env python3
"""
MCP Server Implementation Tests

Tests the MCP server layer using FastMCP client to validate:
- Tool registration and discovery
- Parameter passing for the cover and experiment tools
- Response formatting with server timestamps
- Error dicts for bad input and MCP-level validation
"""

import asyncio
import io
import os
import shutil
import sys
import tempfile
import unittest
from contextlib import redirect_stdout
from datetime import datetime
from unittest.mock import patch

from fastmcp import Client

# Add src to path for imports
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', '..', 'src'))
os.environ.setdefault('COVERS_MCP_QUIET', '1')

from covers_mcp import __version__, server, server_impl

FIB7 = "abaababaabaababaababa"

EXPECTED_TOOLS = {
    "get_system_info",
    "list_reports",
    "compute_covers",
    "cover_array_query",
    "fibonacci_cover_array",
    "run_adversary",
    "run_bench",
}


async def _call(name, params=None):
    client = Client(server_impl.mcp)
    async with client:
        result = await client.call_tool(name, params or {})
        return result.data


async def _tool_names():
    client = Client(server_impl.mcp)
    async with client:
        tools = await client.list_tools()
        return {tool.name for tool in tools}


class TestMcpServer(unittest.TestCase):

    def setUp(self):
        self.test_dir = tempfile.mkdtemp()
        self.original_data_path = os.environ.get('COVERS_MCP_DATA_PATH')
        os.environ['COVERS_MCP_DATA_PATH'] = self.test_dir

    def tearDown(self):
        if self.original_data_path is None:
            os.environ.pop('COVERS_MCP_DATA_PATH', None)
        else:
            os.environ['COVERS_MCP_DATA_PATH'] = self.original_data_path
        shutil.rmtree(self.test_dir, ignore_errors=True)

    def call(self, name, params=None):
        return asyncio.run(_call(name, params))

    def test_tool_discovery(self):
        self.assertEqual(asyncio.run(_tool_names()), EXPECTED_TOOLS)

    def test_system_info(self):
        data = self.call("get_system_info")
        self.assertTrue(data["success"])
        self.assertIn("python_version", data)
        self.assertEqual(data["data_path"], self.test_dir)

    def test_compute_covers(self):
        data = self.call("compute_covers", {"text": FIB7, "oracle": True})
        self.assertTrue(data["success"], data)
        self.assertEqual(data["lengths"], [3, 8, 21])
        self.assertEqual(data["progressions"][0], {"start": 3, "diff": 0, "count": 1})

    def test_compute_covers_empty_text(self):
        data = self.call("compute_covers", {"text": ""})
        self.assertFalse(data["success"])
        self.assertEqual(data["error_kind"], "usage")

    def test_cover_array_query(self):
        data = self.call("cover_array_query", {"text": FIB7, "query": 20})
        self.assertEqual(data["value"], 20)
        data = self.call("cover_array_query", {"text": "aabaab", "all_values": True})
        self.assertEqual(data["values"], [1, 1, 3, 4, 5, 3])

    def test_fibonacci_cover_array(self):
        data = self.call("fibonacci_cover_array", {"m": 7, "query": 9})
        self.assertEqual(data["value"], 9)

    def test_adversary_is_stored(self):
        data = self.call("run_adversary", {"k": 6})
        self.assertTrue(data["success"], data)
        self.assertIn("report_id", data)
        listed = self.call("list_reports", {"kind": "adversary"})
        self.assertEqual(listed["returned_count"], 1)
        self.assertEqual(listed["reports"][0]["id"], data["report_id"])

    def test_bench(self):
        data = self.call("run_bench", {"exponents": [10, 11]})
        self.assertTrue(data["success"], data)
        self.assertEqual([row["n"] for row in data["rows"]], [1024, 2048])

    def test_server_timestamps(self):
        for name, params in [
            ("get_system_info", {}),
            ("fibonacci_cover_array", {"m": 5}),
            ("list_reports", {"kind": "nope"}),
        ]:
            data = self.call(name, params)
            self.assertIn("server_timezone", data, name)
            datetime.fromisoformat(data["server_timestamp"])

    def test_unknown_tool(self):
        with self.assertRaises(Exception):
            self.call("nonexistent_tool")

    def test_version_flag(self):
        out = io.StringIO()
        with patch.object(sys, "argv", ["covers-mcp", "--version"]), redirect_stdout(out):
            with self.assertRaises(SystemExit) as ctx:
                server.main()
        self.assertEqual(ctx.exception.code, 0)
        self.assertEqual(out.getvalue().strip(), f"covers-mcp {__version__}")

    def test_parameter_validation(self):
        with self.assertRaises(Exception):
            self.call("fibonacci_cover_array", {"m": "seven"})


if __name__ == "__main__":
    unittest.main()

"""
covers-mcp - string covers of bit-packed texts.

Provides:
- All covers of a text as O(log n) arithmetic progressions
- A sublinear-space index answering shortest-cover-of-prefix queries
- Closed-form cover arrays of Fibonacci strings
- An adversary experiment for the PILLAR-model lower bound
- Counted benchmarks, a command-line tool and an MCP server
"""

__version__ = "0.3.0"

VERSION = (0, 3, 0)

PACKAGE_NAME = "covers-mcp"
DESCRIPTION = (
    "String covers over bit-packed texts, with a CLI and an MCP (Model Context Protocol) server"
)

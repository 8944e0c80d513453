"""
covers-mcp server: MCP layer only.

Every @mcp.tool() here is a thin wrapper:
  1. Call one service-layer function (imported with _ prefix)
  2. Return add_server_timestamp(result)

No algorithm code and no TinyDB access here.
"""

import os
import sys
from typing import Any, Dict, List, Optional

from fastmcp import FastMCP

from .service import (
    compute_covers as _compute_covers,
    cover_array_query as _cover_array_query,
    fibonacci_cover_array as _fibonacci_cover_array,
    list_stored_reports as _list_stored_reports,
    run_adversary_experiment as _run_adversary_experiment,
    run_benchmark as _run_benchmark,
    system_info as _system_info,
)


# ---------------------------------------------------------------------------
# Helpers
# ---------------------------------------------------------------------------

def add_server_timestamp(response: Dict[str, Any]) -> Dict[str, Any]:
    """Add server_timestamp and server_timezone to any tool response dict."""
    import time
    from datetime import datetime

    if not isinstance(response, dict):
        response = {"data": response}

    response["server_timestamp"] = datetime.now().isoformat()
    try:
        response["server_timezone"] = time.tzname[time.daylight]
    except (AttributeError, IndexError):
        response["server_timezone"] = "local"
    return response


# ---------------------------------------------------------------------------
# Server lifecycle
# ---------------------------------------------------------------------------

mcp = FastMCP(name="Covers MCP Server")


# ---------------------------------------------------------------------------
# Utility tools
# ---------------------------------------------------------------------------

@mcp.tool()
def get_system_info() -> Dict[str, Any]:
    """
    Get version, platform, report storage path and available adversary drivers.

    Returns:
        Dictionary containing system information
    """
    return add_server_timestamp(_system_info())


@mcp.tool()
def list_reports(kind: str = "adversary", limit: int = 20) -> Dict[str, Any]:
    """
    List stored reports, newest first.

    Args:
        kind: One of "adversary", "bench", "covers", "fibonacci"
        limit: Maximum number of reports returned

    Returns:
        Dictionary with the stored reports
    """
    return add_server_timestamp(_list_stored_reports(kind, limit))


# ---------------------------------------------------------------------------
# Cover tools
# ---------------------------------------------------------------------------

@mcp.tool()
def compute_covers(text: str, oracle: bool = False) -> Dict[str, Any]:
    """
    Compute every cover (quasiperiod) of a text.

    A prefix C covers T when every position of T lies inside an occurrence
    of C. The result lists the cover lengths both as arithmetic progressions
    ("start diff count") and flattened.

    Args:
        text: The text; distinct characters become the alphabet
        oracle: Also run the quadratic reference algorithm and compare

    Returns:
        Dictionary with progressions, lengths, shortest cover and counted costs
    """
    return add_server_timestamp(_compute_covers(text=text, oracle=oracle))


@mcp.tool()
def cover_array_query(
    text: str, query: Optional[int] = None, all_values: bool = False, stats: bool = False
) -> Dict[str, Any]:
    """
    Shortest cover of the prefix T[0..query), or of every prefix.

    Args:
        text: The text
        query: Prefix length (1-based); omit when all_values is true
        all_values: Return the whole cover array
        stats: Include index size accounting against the space bound

    Returns:
        Dictionary with "value" or "values"
    """
    return add_server_timestamp(
        _cover_array_query(text=text, query=query, all_values=all_values, stats=stats)
    )


@mcp.tool()
def fibonacci_cover_array(
    m: int, query: Optional[int] = None, check: bool = False
) -> Dict[str, Any]:
    """
    Cover array of the m-th Fibonacci string (Fib_0 = b, Fib_1 = a).

    Args:
        m: Index of the Fibonacci string
        query: Single prefix length to evaluate instead of the whole array
        check: Add the structural report (distinct values, superprimitive prefixes)

    Returns:
        Dictionary with "values" or "value"
    """
    return add_server_timestamp(_fibonacci_cover_array(m, query, check))


# ---------------------------------------------------------------------------
# Experiment tools
# ---------------------------------------------------------------------------

@mcp.tool()
def run_adversary(k: int, driver: str = "random-queries", seed: int = 0) -> Dict[str, Any]:
    """
    Run the lower-bound adversary of order k against a query driver.

    The report is stored and can be listed with list_reports.

    Args:
        k: de Bruijn order (text length 15(2^k + k - 1))
        driver: "random-queries" or "cover-pipeline"
        seed: Seed for randomized drivers

    Returns:
        Experiment report with touched positions, flip position and checks
    """
    return add_server_timestamp(_run_adversary_experiment(k, driver, seed, record=True))


@mcp.tool()
def run_bench(
    exponents: List[int], sigma: int = 2, seed: int = 0, family: str = "random-periodic"
) -> Dict[str, Any]:
    """
    Counted benchmark of the cover pipeline for n = 2^e, e in exponents.

    The report is stored and can be listed with list_reports.

    Args:
        exponents: Size exponents, e.g. [14, 15, 16]
        sigma: Alphabet size
        seed: Random seed
        family: "random-periodic" or "random"

    Returns:
        Per-size rows and a scaling verdict
    """
    return add_server_timestamp(_run_benchmark(exponents, sigma, seed, family, record=True))


def main():
    """Main entry point for the MCP server."""
    print("Starting Covers MCP Server...", file=sys.stderr)
    print(f"Python executable: {sys.executable}", file=sys.stderr)
    print(f"Current directory: {os.getcwd()}", file=sys.stderr)

    mcp.run(transport="stdio", show_banner=False)


if __name__ == "__main__":
    try:
        main()
    except Exception as e:
        print(f"Error starting MCP server: {str(e)}", file=sys.stderr)
        import traceback
        traceback.print_exc(file=sys.stderr)
        sys.exit(1)

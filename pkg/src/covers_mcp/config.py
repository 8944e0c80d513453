"""
Configuration for covers-mcp.

Environment variables are read at call time (not import time) so tests can
point the package at temporary directories:

    COVERS_MCP_DATA_PATH       directory for persisted reports (default: cwd)
    COVERS_MCP_TEST_MODE       "1" enables test-only switches (forced threshold c)
    COVERS_MCP_QUIET           "1" silences diagnostics on stderr
    COVERS_MCP_FULL_ACCEPTANCE "1" runs the test sweeps at their acceptance sizes

Sweep sizes, each defaulting to a quick value or, under full acceptance, to
the acceptance value:

    COVERS_MCP_EXHAUSTIVE_MAX  longest binary text in the exhaustive sweep (10 / 18)
    COVERS_MCP_TERNARY_MAX     longest ternary text in the exhaustive sweep (7 / 12)
    COVERS_MCP_RANDOM_TEXTS    texts in the randomized differential suite (200 / 10000)
    COVERS_MCP_RANDOM_MAX_N    longest text in that suite (2000 / 5000)
    COVERS_MCP_INDEX_QUERIES   random cover-array queries (100000 / 100000)
    COVERS_MCP_BENCH_MAX_EXP   largest bench exponent, n = 2^e (20 / 22)
    COVERS_MCP_SPACE_MAX_EXP   largest space-check exponent (16 / 20)

The constants below are calibrated once and frozen; tests assert against them.
"""

import os

WORD_BITS = 64

# Long-cover query units: units <= LONG_UNITS_K * n / 2**(floor(log2 max(c,1)) - 1)
LONG_UNITS_K = 8

# Short-cover word operations: ops <= SHORT_OPS_K * (n/max(c,1) + 3c^2 |F| + c)
SHORT_OPS_K = 4

# Cover-array index space, in words of ceil(log2 n) bits:
#   words <= SPACE_C1 * n * (log2 sigma + log2 log2 n) / log2 n + SPACE_C2
SPACE_C1 = 2.0
SPACE_C2 = 64.0

LOWER_BOUND_C = 1 / 180

# Largest direct-addressed presence table (entries) for the short-cover windows.
PRESENCE_TABLE_LIMIT = 1 << 22

DEFAULT_BENCH_EXPONENTS = tuple(range(14, 23))
DEFAULT_EXHAUSTIVE_MAX = 10

# (quick, full acceptance)
SWEEP_SIZES = {
    "COVERS_MCP_EXHAUSTIVE_MAX": (DEFAULT_EXHAUSTIVE_MAX, 18),
    "COVERS_MCP_TERNARY_MAX": (7, 12),
    "COVERS_MCP_RANDOM_TEXTS": (200, 10_000),
    "COVERS_MCP_RANDOM_MAX_N": (2000, 5000),
    "COVERS_MCP_INDEX_QUERIES": (100_000, 100_000),
    "COVERS_MCP_BENCH_MAX_EXP": (20, 22),
    "COVERS_MCP_SPACE_MAX_EXP": (16, 20),
}

REPORTS_FILENAME = "covers_mcp_reports.json"


def data_path() -> str:
    """Directory holding persisted reports."""
    return os.getenv("COVERS_MCP_DATA_PATH", os.getcwd())


def test_mode() -> bool:
    return os.getenv("COVERS_MCP_TEST_MODE", "") == "1"


def quiet() -> bool:
    return os.getenv("COVERS_MCP_QUIET", "") == "1"


def full_acceptance() -> bool:
    return os.getenv("COVERS_MCP_FULL_ACCEPTANCE", "") == "1"


def sweep_size(name: str) -> int:
    """Size knob `name` from the environment, else its quick or full-acceptance default."""
    quick, full = SWEEP_SIZES[name]
    fallback = full if full_acceptance() else quick
    raw = os.getenv(name, "")
    try:
        return int(raw) if raw else fallback
    except ValueError:
        return fallback


def exhaustive_max() -> int:
    return sweep_size("COVERS_MCP_EXHAUSTIVE_MAX")

"""
Service layer: one function per user-facing operation.

Every function returns a JSON-ready dict with "success" and either the
payload or "error" plus "error_kind" (usage, io, oracle_mismatch,
internal). Nothing here raises for bad input; the CLI and the MCP server
are thin wrappers over these functions.
"""

import os
import platform
import sys
from typing import Any, Dict, List, Optional, Sequence, Tuple

from . import __version__, config, reports
from .bench import check_scaling, run_bench
from .cover_algorithms import covers_with_stats
from .cover_array_ds import (
    build_cover_index,
    index_size_bits,
    query_cov,
    space_bound_words,
    t_bound,
)
from .errors import CoverInputError, CoversError
from .fibonacci import check_corollary, fib_cover_array, fib_cov, fib_length, fib_table
from .lower_bound import DRIVERS, run_adversary
from .oracles import all_covers_naive, cover_array_breslauer
from .packed_text import PackedText, pack, pack_string


def _failure(e: Exception) -> Dict[str, Any]:
    if isinstance(e, CoversError):
        kind = e.kind
    elif isinstance(e, OSError):
        kind = "io"
    else:
        kind = "internal"
    return {"success": False, "error": str(e), "error_kind": kind}


def load_text(
    text: Optional[str] = None,
    path: Optional[str] = None,
    symbols: Optional[Sequence[int]] = None,
    sigma: Optional[int] = None,
) -> Tuple[PackedText, list]:
    """
    Pack exactly one input source. Files are read as bytes with one trailing
    newline removed; distinct bytes map to [0, σ) in first-occurrence order.
    Explicit symbol lists need sigma.
    """
    sources = [s for s in (text, path, symbols) if s is not None]
    if len(sources) != 1:
        raise CoverInputError("exactly one of text, path or symbols is required")
    if symbols is not None:
        if sigma is None:
            raise CoverInputError("explicit symbol lists need sigma")
        return pack(list(symbols), sigma), list(range(sigma))
    if path is not None:
        with open(path, "rb") as f:
            data = f.read()
        if data.endswith(b"\n"):
            data = data[:-1]
        packed, alphabet = pack_string(data, sigma)
        return packed, [chr(b) for b in alphabet]
    return pack_string(text, sigma)


def _check_force_c(force_c: Optional[int]) -> None:
    if force_c is not None and not config.test_mode():
        raise CoverInputError("forcing c needs COVERS_MCP_TEST_MODE=1")


def compute_covers(
    text: Optional[str] = None,
    path: Optional[str] = None,
    symbols: Optional[Sequence[int]] = None,
    sigma: Optional[int] = None,
    force_c: Optional[int] = None,
    oracle: bool = False,
    workers: int = 1,
    record: bool = False,
) -> Dict[str, Any]:
    """All covers as progressions plus the flattened lengths and the counted costs."""
    try:
        _check_force_c(force_c)
        t, _ = load_text(text, path, symbols, sigma)
        run = covers_with_stats(t, force_c=force_c, workers=workers)
        lengths = run.cover_set.enumerate()
        result: Dict[str, Any] = {
            "success": True,
            "n": t.n,
            "sigma": t.sigma,
            "lengths": lengths,
            "shortest": run.cover_set.shortest(),
            **run.as_dict(),
        }
        if oracle:
            expected = sorted(all_covers_naive(t))
            result["oracle_lengths"] = expected
            if expected != lengths:
                result.update(
                    success=False,
                    error=f"oracle mismatch: pipeline {lengths} vs naive {expected}",
                    error_kind="oracle_mismatch",
                )
        if record and result["success"]:
            result["report_id"] = reports.record_report("covers", run.as_dict())
        return result
    except Exception as e:
        return _failure(e)


def cover_array_query(
    text: Optional[str] = None,
    path: Optional[str] = None,
    symbols: Optional[Sequence[int]] = None,
    sigma: Optional[int] = None,
    query: Optional[int] = None,
    all_values: bool = False,
    stats: bool = False,
    oracle: bool = False,
) -> Dict[str, Any]:
    """Shortest-cover-of-prefix values from the cover-array index."""
    try:
        if (query is None) == (not all_values):
            raise CoverInputError("give exactly one of query or all_values")
        t, _ = load_text(text, path, symbols, sigma)
        index = build_cover_index(t)
        result: Dict[str, Any] = {"success": True, "n": t.n, "sigma": t.sigma, "t": index.t}
        if all_values:
            values = [query_cov(index, length) for length in range(1, t.n + 1)]
            result["values"] = values
        else:
            values = [query_cov(index, query)]
            result["query"] = query
            result["value"] = values[0]
        if stats:
            sizes = index_size_bits(index)
            bound = space_bound_words(t.n, t.sigma)
            result["stats"] = {
                **sizes,
                "bound_words": bound,
                "within_bound": sizes["words"] <= bound,
                "t_bound": t_bound(t.n),
            }
        if oracle:
            cov = cover_array_breslauer(t).cov
            expected = cov[1:] if all_values else [cov[query]]
            if expected != values:
                result.update(
                    success=False,
                    error="oracle mismatch between index and online cover array",
                    error_kind="oracle_mismatch",
                )
        return result
    except Exception as e:
        return _failure(e)


def fibonacci_cover_array(
    m: int, query: Optional[int] = None, check: bool = False, record: bool = False
) -> Dict[str, Any]:
    """Cover array of Fib_m from the closed-form recursion, or one entry of it."""
    try:
        if m < 0:
            raise CoverInputError("m must be >= 0")
        n = fib_length(m)
        result: Dict[str, Any] = {"success": True, "m": m, "n": n}
        if query is not None:
            if not 1 <= query <= n:
                raise CoverInputError(f"query {query} out of range [1, {n}]")
            result["query"] = query
            result["value"] = fib_cov(query, fib_table(n))
        else:
            result["values"] = fib_cover_array(m)
        if check:
            result["corollary"] = check_corollary(m)
        if record:
            summary = {k: v for k, v in result.items() if k not in ("success", "values")}
            result["report_id"] = reports.record_report("fibonacci", summary)
        return result
    except Exception as e:
        return _failure(e)


def run_adversary_experiment(
    k: int, driver: str = "random-queries", seed: int = 0, record: bool = False
) -> Dict[str, Any]:
    try:
        if k < 1:
            raise CoverInputError("k must be >= 1")
        report = run_adversary(k, driver, seed)
        result = {"success": True, **report}
        if record:
            result["report_id"] = reports.record_report("adversary", report)
        return result
    except Exception as e:
        return _failure(e)


def run_benchmark(
    exponents: Optional[List[int]] = None,
    sigma: int = 2,
    seed: int = 0,
    family: str = "random-periodic",
    record: bool = False,
) -> Dict[str, Any]:
    try:
        rows = run_bench(exponents, sigma=sigma, seed=seed, family=family)
        verdict = check_scaling(rows)
        result = {"success": True, "rows": rows, "scaling": verdict}
        if record:
            result["report_id"] = reports.record_report(
                "bench",
                {"family": family, "sigma": sigma, "seed": seed, "rows": rows, "scaling": verdict},
            )
        return result
    except Exception as e:
        return _failure(e)


def list_stored_reports(kind: str, limit: int = 20) -> Dict[str, Any]:
    try:
        found = reports.list_reports(kind, limit)
        return {"success": True, "kind": kind, "reports": found, "returned_count": len(found)}
    except Exception as e:
        return _failure(e)


def system_info() -> Dict[str, Any]:
    return {
        "success": True,
        "version": __version__,
        "python_version": platform.python_version(),
        "platform": platform.platform(),
        "python_executable": sys.executable,
        "data_path": config.data_path(),
        "data_path_configured": os.getenv("COVERS_MCP_DATA_PATH") is not None,
        "test_mode": config.test_mode(),
        "drivers": sorted(DRIVERS),
        "report_kinds": list(reports.REPORT_KINDS),
    }

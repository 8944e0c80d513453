"""
Counted benchmarks of the cover pipeline.

Costs are word operations (short covers) and query units (long covers),
not wall-clock time. Each row carries the bound evaluated with the frozen
constants from config, and the ratio to the previous row.
"""
from __future__ import annotations

import math
from typing import Iterable, Optional

import numpy as np

from . import diagnostics
from .config import DEFAULT_BENCH_EXPONENTS, LONG_UNITS_K, SHORT_OPS_K
from .cover_algorithms import covers_with_stats
from .errors import CoverInputError
from .families import FAMILIES
from .packed_text import pack

RATIO_LOW, RATIO_HIGH = 1.6, 2.4


def long_units_bound(n: int, c: int) -> float:
    return LONG_UNITS_K * n / 2 ** (int(math.log2(max(c, 1))) - 1)


def short_ops_bound(n: int, c: int, distinct_windows: int) -> float:
    c1 = max(c, 1)
    return SHORT_OPS_K * (n / c1 + 3 * c * c * distinct_windows + c)


def progression_bound(n: int) -> int:
    return 2 * math.ceil(math.log2(n + 1)) + 4


def run_bench(
    exponents: Optional[Iterable[int]] = None,
    sigma: int = 2,
    seed: int = 0,
    family: str = "random-periodic",
    workers: int = 1,
) -> list[dict]:
    if family not in FAMILIES:
        raise CoverInputError(f"unknown family {family!r}; choose from {sorted(FAMILIES)}")
    exponents = list(exponents) if exponents is not None else list(DEFAULT_BENCH_EXPONENTS)
    rows: list[dict] = []
    for e in exponents:
        n = 2**e
        # same seed per size: the periodic family keeps its block across sizes
        rng = np.random.default_rng(seed)
        text = pack(FAMILIES[family](n, sigma, rng), sigma)
        run = covers_with_stats(text, workers=workers)
        row = {
            "n": n,
            "sigma": sigma,
            "c": run.c,
            "short_word_ops": run.short_word_ops,
            "long_query_units": run.long_query_units,
            "short_ops_bound": short_ops_bound(n, run.c, run.distinct_windows),
            "units_bound": long_units_bound(n, run.c),
            "progressions": len(run.cover_set),
            "progression_bound": progression_bound(n),
            "distinct_windows": run.distinct_windows,
        }
        if rows:
            prev = rows[-1]
            row["long_ratio"] = _ratio(row["long_query_units"], prev["long_query_units"])
            scale = (n / max(run.c, 1)) / (prev["n"] / max(prev["c"], 1))
            row["short_ratio"] = _ratio(row["short_word_ops"], prev["short_word_ops"]) * 2 / scale
        rows.append(row)
        diagnostics.log("bench", f"n=2^{e} c={run.c} units={run.long_query_units}")
    return rows


def _ratio(a: float, b: float) -> float:
    if b:
        return a / b
    return float("inf") if a else 2.0


def check_scaling(rows: list[dict]) -> dict:
    """Verdict over bench rows: ratios per doubling and the frozen bounds."""
    violations = []
    for row in rows:
        n = row["n"]
        if row["long_query_units"] > row["units_bound"]:
            violations.append(f"n={n}: long units {row['long_query_units']} above bound")
        if row["short_word_ops"] > row["short_ops_bound"]:
            violations.append(f"n={n}: short ops {row['short_word_ops']} above bound")
        if row["progressions"] > row["progression_bound"]:
            violations.append(f"n={n}: {row['progressions']} progressions above bound")
        for key in ("long_ratio", "short_ratio"):
            if key in row and not RATIO_LOW <= row[key] <= RATIO_HIGH:
                violations.append(
                    f"n={n}: {key} {row[key]:.2f} outside [{RATIO_LOW}, {RATIO_HIGH}]"
                )
    return {"ok": not violations, "violations": violations, "sizes": [r["n"] for r in rows]}

"""
Text generators shared by tests, benchmarks and the CLI.
"""
from __future__ import annotations

from typing import Callable

import numpy as np

from .errors import CoverInputError
from .fibonacci import fib_string
from .oracles import border_array


def block_text(m: int) -> str:
    """a^(2m) b a^(3m) b a^(2m); the last m+1 cover-array entries are 3m+1 .. 4m+1."""
    if m < 1:
        raise CoverInputError("m must be >= 1")
    return "a" * (2 * m) + "b" + "a" * (3 * m) + "b" + "a" * (2 * m)


def random_text(n: int, sigma: int, rng: np.random.Generator) -> np.ndarray:
    if n < 0 or sigma < 1:
        raise CoverInputError(f"bad random text parameters n={n} sigma={sigma}")
    return rng.integers(0, sigma, size=n, dtype=np.int64)


def random_periodic_text(
    n: int, sigma: int, block: int, rng: np.random.Generator, unbordered: bool = False
) -> np.ndarray:
    """
    A random length-`block` string repeated to length n; rich in long borders.

    With unbordered=True the block is redrawn until it has no border, so the
    borders of the result are exactly the multiples of `block`.
    """
    if block < 1:
        raise CoverInputError("block must be >= 1")
    if unbordered and sigma < 2 and block > 1:
        raise CoverInputError("an unbordered block needs sigma >= 2")
    unit = random_text(block, sigma, rng)
    while unbordered and border_array(unit)[block] > 0:
        unit = random_text(block, sigma, rng)
    return np.resize(unit, n)


def fibonacci_text(m: int) -> np.ndarray:
    return np.array([0 if ch == "a" else 1 for ch in fib_string(m)], dtype=np.int64)


FAMILIES: dict[str, Callable[[int, int, np.random.Generator], np.ndarray]] = {
    "random": random_text,
    "random-periodic": lambda n, sigma, rng: random_periodic_text(
        n, sigma, 8, rng, unbordered=True
    ),
}

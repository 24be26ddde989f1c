"""Exact sums of the first n primes with an odd-only segmented sieve."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple

import numpy as np


class PrimeSumCheckpoint(NamedTuple):
    count: int
    last_prime: int
    sum: int


class SieveError(RuntimeError):
    def __init__(self, message: str, reached: int = 0):
        super().__init__(message)
        self.reached = reached


@dataclass(frozen=True)
class SieveConfig:
    segment_size: int = 1 << 20  # odd numbers per segment

    def __post_init__(self):
        if self.segment_size < 1 << 10:
            raise ValueError(f"segment_size must be >= 1024, got {self.segment_size}")


def nth_prime_upper_bound(n: int) -> int:
    """p_n < n (log n + log log n) for n >= 6."""
    if n < 6:
        return 13
    return int(n * (math.log(n) + math.log(math.log(n)))) + 1


def _odd_base_primes(limit: int) -> np.ndarray:
    """Odd primes up to ``limit`` by a plain sieve."""
    if limit < 3:
        return np.zeros(0, dtype=np.int64)
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    flags[4::2] = False
    for p in range(3, math.isqrt(limit) + 1, 2):
        if flags[p]:
            flags[p * p::2 * p] = False
    primes = np.flatnonzero(flags).astype(np.int64)
    return primes[primes > 2]


def _segments(cfg: SieveConfig, limit: int):
    """Yield arrays of the odd primes in consecutive segments from 3 upward.

    ``limit`` is only the first guess; when the caller keeps consuming past
    it the limit doubles and the base primes are recomputed.
    """
    span = 2 * cfg.segment_size
    low = 3
    base = _odd_base_primes(math.isqrt(limit) + 1)
    while True:
        high = low + span  # exclusive; odd numbers low, low+2, ..., high-2
        if (high - 1) > limit:
            limit = max(2 * limit, high)
            base = _odd_base_primes(math.isqrt(limit) + 1)
        mask = np.ones(cfg.segment_size, dtype=bool)
        for p in base:
            p = int(p)
            sq = p * p
            if sq >= high:
                break
            start = max(sq, -(-low // p) * p)
            if start % 2 == 0:
                start += p
            mask[(start - low) // 2::p] = False
        yield low + 2 * np.flatnonzero(mask).astype(np.int64)
        low = high


def checkpoint_stream(n_grid: Iterable[int], cfg: SieveConfig = SieveConfig()
                      ) -> list[PrimeSumCheckpoint]:
    """Checkpoints (n, p_n, p_1 + ... + p_n) for every n in an increasing grid, in one pass."""
    grid = [int(n) for n in n_grid]
    if any(n < 1 for n in grid):
        raise ValueError("grid entries must be >= 1")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ValueError("grid must be strictly increasing")
    out: list[PrimeSumCheckpoint] = []
    if not grid:
        return out

    pending = iter(grid)
    target = next(pending)
    if target == 1:
        out.append(PrimeSumCheckpoint(1, 2, 2))
        target = next(pending, None)
    count, total = 1, 2
    try:
        for primes in _segments(cfg, nth_prime_upper_bound(grid[-1])):
            if target is None:
                break
            c = len(primes)
            while target is not None and target <= count + c:
                k = target - count
                out.append(PrimeSumCheckpoint(target, int(primes[k - 1]),
                                              total + int(primes[:k].sum())))
                target = next(pending, None)
            count += c
            total += int(primes.sum())
    except MemoryError:
        raise SieveError(f"out of memory after {count} primes", reached=count) from None
    return out


def sum_first_n_primes(n: int, cfg: SieveConfig = SieveConfig()) -> PrimeSumCheckpoint:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return checkpoint_stream([n], cfg)[0]


def checkpoints_csv(rows: Iterable[PrimeSumCheckpoint]) -> str:
    lines = ["n,p_n,sum"]
    lines += [f"{c.count},{c.last_prime},{c.sum}" for c in rows]
    return "\n".join(lines) + "\n"

"""Exact counts of partitions into Beatty-sequence parts.

``count_unrestricted`` is the unbounded-knapsack recurrence (ascending j, so a
part may be reused); ``count_distinct`` is the 0/1-knapsack recurrence
(descending j, so each part is used at most once).  Counts are Python ints.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .alpha import Alpha, floor_multiple
from .errors import DomainError, ResourceError

UNRESTRICTED = "Unrestricted"
DISTINCT = "Distinct"

DEFAULT_MAX_N = 10 ** 6
BRUTE_FORCE_MAX_N = 60


@dataclass
class PartitionTable:
    alpha_spec: str
    kind: str
    n_max: int
    counts: list[int] = field(repr=False)

    def __getitem__(self, n: int) -> int:
        return self.counts[n]


def beatty_parts(a: Alpha, n_max: int):
    """Yield floor(alpha*l) for l = 1, 2, ... while it does not exceed n_max."""
    ell = 1
    while True:
        b = floor_multiple(a, ell)
        if b > n_max:
            return
        yield b
        ell += 1


def _check_n(n_max: int, cap: int) -> None:
    if n_max < 0:
        raise DomainError(f"n_max must be >= 0, got {n_max}")
    if n_max > cap:
        raise ResourceError(f"n_max = {n_max} exceeds the cap {cap}")


def count_unrestricted(a: Alpha, n_max: int, cap: int = DEFAULT_MAX_N) -> PartitionTable:
    """p_alpha(0..n_max): partitions into Beatty parts, repetition allowed."""
    _check_n(n_max, cap)
    counts = [1] + [0] * n_max
    for b in beatty_parts(a, n_max):
        for j in range(b, n_max + 1):
            counts[j] += counts[j - b]
    return PartitionTable(a.spec, UNRESTRICTED, n_max, counts)


def count_distinct(a: Alpha, n_max: int, cap: int = DEFAULT_MAX_N) -> PartitionTable:
    """q_alpha(0..n_max): partitions into distinct Beatty parts."""
    _check_n(n_max, cap)
    counts = [1] + [0] * n_max
    for b in beatty_parts(a, n_max):
        for j in range(n_max, b - 1, -1):
            counts[j] += counts[j - b]
    return PartitionTable(a.spec, DISTINCT, n_max, counts)


def count(a: Alpha, n_max: int, kind: str) -> PartitionTable:
    if kind in (UNRESTRICTED, "p"):
        return count_unrestricted(a, n_max)
    if kind in (DISTINCT, "q"):
        return count_distinct(a, n_max)
    raise DomainError(f"unknown partition kind {kind!r}")


def enumerate_partitions(a: Alpha, n: int, kind: str):
    """Yield every partition of n into Beatty parts as a non-increasing tuple."""
    parts = list(beatty_parts(a, n))
    distinct = kind in (DISTINCT, "q")

    def rec(remaining: int, max_index: int, prefix: tuple):
        if remaining == 0:
            yield prefix
            return
        for i in range(max_index, -1, -1):
            b = parts[i]
            if b > remaining:
                continue
            yield from rec(remaining - b, i - 1 if distinct else i, prefix + (b,))

    yield from rec(n, len(parts) - 1, ())


def brute_force_count(a: Alpha, n: int, kind: str) -> int:
    """Count partitions by explicit enumeration (test oracle for the recurrences)."""
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    if n > BRUTE_FORCE_MAX_N:
        raise ResourceError(f"brute force is limited to n <= {BRUTE_FORCE_MAX_N}")
    return sum(1 for _ in enumerate_partitions(a, n, kind))

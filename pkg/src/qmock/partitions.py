"""Brute-force partitions, Dyson's rank and rank-difference series.

Everything here is computed by direct enumeration (or the pentagonal-number
recurrence for plain counts) so it stays independent of the series engine
it is used to check.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .series import QSeries

Partition = tuple[int, ...]

__all__ = [
    "Partition",
    "RankTally",
    "partitions",
    "partition_count",
    "rank",
    "rank_tally",
    "rank_difference_series",
    "congruence_scan",
    "dyson_classes_equal",
]


def partitions(n: int) -> Iterator[Partition]:
    """All partitions of ``n`` as weakly decreasing tuples, in reverse lexicographic order.

    >>> list(partitions(4))
    [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        yield ()
        return
    parts = [n]
    while True:
        yield tuple(parts)
        rem = 0
        while parts and parts[-1] == 1:
            parts.pop()
            rem += 1
        if not parts:
            return
        parts[-1] -= 1
        rem += 1
        x = parts[-1]
        while rem > x:
            parts.append(x)
            rem -= x
        parts.append(rem)


@lru_cache(maxsize=None)
def partition_count(n: int) -> int:
    """p(n) by Euler's pentagonal-number recurrence; p(0) = 1."""
    if n < 0:
        return 0
    if n == 0:
        return 1
    total = 0
    k = 1
    while True:
        g1 = k * (3 * k - 1) // 2
        if g1 > n:
            break
        sign = 1 if k % 2 else -1
        total += sign * partition_count(n - g1)
        g2 = k * (3 * k + 1) // 2
        if g2 <= n:
            total += sign * partition_count(n - g2)
        k += 1
    return total


def rank(p: Partition) -> int:
    """Largest part minus number of parts."""
    if not p:
        return 0
    return p[0] - len(p)


@dataclass(frozen=True)
class RankTally:
    """``counts[a]`` is N(a, M; n), the number of partitions of n with rank = a mod M."""

    n: int
    modulus: int
    counts: tuple[int, ...]

    def __getitem__(self, a: int) -> int:
        return self.counts[a % self.modulus]

    @property
    def total(self) -> int:
        return sum(self.counts)


def rank_tally(n: int, modulus: int) -> RankTally:
    counts = [0] * modulus
    for p in partitions(n):
        counts[rank(p) % modulus] += 1
    return RankTally(n, modulus, tuple(counts))


def rank_difference_series(a: int, b: int, M: int, c: int, m: int, order: int) -> QSeries:
    """R(a, b, M, c, m; q) = sum (N(a, M; mn + c) - N(b, M; mn + c)) q^n below ``q^order``."""
    if not (0 <= a < M and 0 <= b < M and 0 <= c < m):
        raise ValueError("need 0 <= a, b < M and 0 <= c < m")
    coeffs = []
    for n in range(order):
        tally = rank_tally(m * n + c, M)
        coeffs.append(tally[a] - tally[b])
    return QSeries(1, 0, order, coeffs) if order > 0 else QSeries.zero(order)


def congruence_scan(t: int, d: int, count: int) -> list[int]:
    """Indices ``n < count`` where p(tn + d) is *not* divisible by ``t``; empty means pass."""
    return [n for n in range(count) if partition_count(t * n + d) % t]


def dyson_classes_equal(M: int, n: int) -> bool:
    """Whether N(a, M; n) takes one value for all ``0 <= a <= (M-1)/2``."""
    tally = rank_tally(n, M)
    return len({tally[a] for a in range((M - 1) // 2 + 1)}) == 1

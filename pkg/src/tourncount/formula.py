"""Closed-form exact counts: Stirling numbers, ordered Bell numbers and the
triangular-tournament sums.  Integers and fractions only, no floating point."""

from __future__ import annotations

import math
import threading
from fractions import Fraction
from functools import lru_cache

from .exact import path_cover_profile
from .tournament import Tournament

__all__ = [
    "StirlingTable",
    "FactorialTable",
    "stirling2",
    "stirling_row",
    "factorial",
    "joining_factor",
    "hamilton_count_triangular",
    "lower_bound",
    "transitive_triangular_count",
    "internal_free_count",
    "ordered_bell",
    "ordered_bell_recurrence",
    "expected_path_covers",
    "expected_triangular_cycles",
]


class StirlingTable:
    """Rows ``S(m, 0..m)`` grown on demand by ``S(m,k) = k S(m-1,k) + S(m-1,k-1)``."""

    def __init__(self) -> None:
        self._rows: list[tuple[int, ...]] = [(1,)]
        self._lock = threading.Lock()

    @property
    def max_m(self) -> int:
        return len(self._rows) - 1

    def row(self, m: int) -> tuple[int, ...]:
        if m < 0:
            raise ValueError(f"m must be >= 0, got {m}")
        if m > self.max_m:
            with self._lock:
                rows = self._rows
                while len(rows) <= m:
                    prev = rows[-1]
                    size = len(prev)
                    new = [0] * (size + 1)
                    for k in range(1, size + 1):
                        new[k] = (k * prev[k] if k < size else 0) + prev[k - 1]
                    rows.append(tuple(new))
        return self._rows[m]

    def __call__(self, m: int, k: int) -> int:
        if m < 0 or k < 0:
            raise ValueError(f"Stirling arguments must be nonnegative, got ({m}, {k})")
        if k > m:
            return 0
        return self.row(m)[k]


class FactorialTable:
    def __init__(self) -> None:
        self._fact = [1]
        self._lock = threading.Lock()

    def __call__(self, i: int) -> int:
        if i < 0:
            raise ValueError(f"factorial of negative number {i}")
        if i >= len(self._fact):
            with self._lock:
                fact = self._fact
                while len(fact) <= i:
                    fact.append(fact[-1] * len(fact))
        return self._fact[i]


_STIRLING = StirlingTable()
_FACT = FactorialTable()


def stirling2(m: int, k: int) -> int:
    """Stirling number of the second kind; 0 when ``k > m``."""
    return _STIRLING(m, k)


def stirling_row(m: int) -> tuple[int, ...]:
    return _STIRLING.row(m)


def factorial(i: int) -> int:
    return _FACT(i)


def joining_factor(k: int) -> int:
    """``k!^3 / k``, computed as ``k! * k! * (k-1)!``."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    return _FACT(k) * _FACT(k) * _FACT(k - 1)


def _check_sizes(*sizes: int) -> None:
    for m in sizes:
        if m < 1:
            raise ValueError(f"part sizes must be >= 1, got {sizes}")


def hamilton_count_triangular(
    t1: Tournament, t2: Tournament, t3: Tournament, cap: int | None = None
) -> int:
    """Hamilton cycles of ``C3(t1, t2, t3)`` from the three path-cover profiles.

    A cycle that enters each block ``k`` times cuts every block into a
    k-path cover, and any three k-path covers join in ``k!^3/k`` ways.
    """
    profiles = [path_cover_profile(t, cap) for t in (t1, t2, t3)]
    kmax = min(t1.n, t2.n, t3.n)
    return sum(
        profiles[0][k] * profiles[1][k] * profiles[2][k] * joining_factor(k)
        for k in range(1, kmax + 1)
    )


def lower_bound(m1: int, m2: int, m3: int) -> int:
    _check_sizes(m1, m2, m3)
    return sum(
        stirling2(m1, k) * stirling2(m2, k) * stirling2(m3, k) * joining_factor(k)
        for k in range(1, min(m1, m2, m3) + 1)
    )


def transitive_triangular_count(m: int) -> int:
    """Hamilton cycles of ``C3`` over three transitive ``m``-vertex parts."""
    _check_sizes(m)
    row = stirling_row(m)
    total = 0
    for k in range(1, m + 1):
        s = row[k]
        total += s * s * s * joining_factor(k)
    return total


def internal_free_count(m: int) -> int:
    """Cycles of ``C3`` using only cross arcs: ``m!^3 / m``."""
    _check_sizes(m)
    return joining_factor(m)


def ordered_bell(m: int) -> int:
    """Fubini number ``sum_k S(m,k) k!``."""
    if m < 0:
        raise ValueError(f"m must be >= 0, got {m}")
    row = stirling_row(m)
    return sum(row[k] * _FACT(k) for k in range(len(row))) if m else 1


def ordered_bell_recurrence(m: int) -> int:
    """Fubini number from ``f(m) = sum_j C(m,j) f(m-j)``; independent of the Stirling table."""
    if m < 0:
        raise ValueError(f"m must be >= 0, got {m}")
    f = [1]
    for i in range(1, m + 1):
        f.append(sum(math.comb(i, j) * f[i - j] for j in range(1, i + 1)))
    return f[m]


@lru_cache(maxsize=None)
def expected_path_covers(m: int, k: int) -> Fraction:
    """Mean number of k-path covers of a uniform random tournament on ``m`` vertices.

    Blocks of a partition have disjoint arc sets, so their Hamilton path
    counts are independent with means ``b! / 2^(b-1)``.
    """
    if m == 0:
        return Fraction(int(k == 0))
    if k <= 0 or k > m:
        return Fraction(0)
    total = Fraction(0)
    for b in range(1, m - k + 2):
        block = Fraction(_FACT(b), 2 ** (b - 1))
        total += math.comb(m - 1, b - 1) * block * expected_path_covers(m - b, k - 1)
    return total


def expected_triangular_cycles(m1: int, m2: int, m3: int) -> Fraction:
    """Exact mean Hamilton cycle count of ``C3`` over independent uniform random parts."""
    _check_sizes(m1, m2, m3)
    return sum(
        (
            expected_path_covers(m1, k) * expected_path_covers(m2, k)
            * expected_path_covers(m3, k) * joining_factor(k)
            for k in range(1, min(m1, m2, m3) + 1)
        ),
        Fraction(0),
    )

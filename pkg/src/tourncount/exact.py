"""Exact Hamilton path, cycle and k-path-cover counts by subset DP.

The DP tables are numpy arrays indexed by ``(vertex subset, endpoint)``.
Entries never exceed ``n!`` so ``uint64`` is exact up to ``n = 20``; above
that the tables fall back to Python integers (``dtype=object``).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations

import numpy as np

from .tournament import Tournament

__all__ = [
    "CapExceededError",
    "DEFAULT_CYCLE_CAP",
    "DEFAULT_COVER_CAP",
    "PathCoverProfile",
    "count_hamilton_paths",
    "count_hamilton_cycles",
    "brute_force_cycles",
    "brute_force_paths",
    "find_hamilton_path",
    "hamilton_path_table",
    "count_k_path_covers",
    "path_cover_profile",
    "brute_force_path_covers",
    "set_partitions",
]

DEFAULT_CYCLE_CAP = 24
DEFAULT_COVER_CAP = 20
BRUTE_CYCLE_MAX = 10
BRUTE_COVER_MAX = 8
_UINT64_SAFE = 20  # 20! < 2**64


class CapExceededError(ValueError):
    """Instance larger than the configured size cap."""

    def __init__(self, n: int, cap: int, what: str = "tournament"):
        super().__init__(f"{what} has {n} vertices, exceeding the configured cap of {cap}")
        self.n = n
        self.cap = cap


def _check_cap(n: int, cap: int | None, default: int) -> None:
    cap = default if cap is None else cap
    if n > cap:
        raise CapExceededError(n, cap)


@lru_cache(maxsize=None)
def _layers(n: int) -> tuple[np.ndarray, ...]:
    """Masks of ``0 .. 2**n - 1`` grouped by popcount."""
    masks = np.arange(1 << n, dtype=np.int64)
    pc = np.zeros(1 << n, dtype=np.int64)
    for b in range(n):
        pc += (masks >> b) & 1
    return tuple(masks[pc == s] for s in range(n + 1))


def _dtype(n: int):
    return np.uint64 if n <= _UINT64_SAFE else object


def _endpoint_dp(t: Tournament, anchored: bool) -> np.ndarray:
    """``dp[S, v]`` = number of directed paths through exactly ``S`` ending at ``v``.

    With ``anchored`` every path starts at vertex 0; otherwise at any vertex.
    """
    n = t.n
    dtype = _dtype(n)
    dp = np.zeros((1 << n, n), dtype=dtype)
    starts = [0] if anchored else range(n)
    for v in starts:
        dp[1 << v, v] = 1
    # into[u][v] = 1 iff v -> u
    into = t.arcs.T.astype(np.uint64).astype(dtype)
    layers = _layers(n)
    for s in range(2, n + 1):
        layer = layers[s]
        if anchored:
            layer = layer[(layer & 1) == 1]
        for u in range(1 if anchored else 0, n):
            sel = layer[((layer >> u) & 1) == 1]
            if sel.size == 0:
                continue
            dp[sel, u] = dp[sel ^ (1 << u)] @ into[u]
    return dp


def count_hamilton_paths(t: Tournament, cap: int | None = None) -> int:
    _check_cap(t.n, cap, DEFAULT_CYCLE_CAP)
    if t.n == 1:
        return 1
    dp = _endpoint_dp(t, anchored=False)
    return int(sum(int(x) for x in dp[-1]))


def count_hamilton_cycles(t: Tournament, cap: int | None = None) -> int:
    """Directed Hamilton cycles, each counted once (paths from vertex 0 closed back to 0)."""
    _check_cap(t.n, cap, DEFAULT_CYCLE_CAP)
    if t.n < 3:
        return 0
    dp = _endpoint_dp(t, anchored=True)
    last = dp[-1]
    return sum(int(last[u]) for u in range(1, t.n) if t.rows[u] & 1)


def brute_force_paths(t: Tournament) -> int:
    if t.n > BRUTE_CYCLE_MAX:
        raise CapExceededError(t.n, BRUTE_CYCLE_MAX, "brute-force instance")
    return sum(
        all(t.rows[a] >> b & 1 for a, b in zip(p, p[1:]))
        for p in permutations(range(t.n))
    )


def brute_force_cycles(t: Tournament) -> int:
    """Check every cyclic order with vertex 0 first."""
    if t.n > BRUTE_CYCLE_MAX:
        raise CapExceededError(t.n, BRUTE_CYCLE_MAX, "brute-force instance")
    if t.n < 3:
        return 0
    rows = t.rows
    count = 0
    for rest in permutations(range(1, t.n)):
        cyc = (0,) + rest + (0,)
        if all(rows[a] >> b & 1 for a, b in zip(cyc, cyc[1:])):
            count += 1
    return count


def find_hamilton_path(t: Tournament) -> list[int]:
    """Constructive Redei: insert each vertex before the first path vertex it beats."""
    path = [0]
    for v in range(1, t.n):
        row = t.rows[v]
        for i, w in enumerate(path):
            if row >> w & 1:
                path.insert(i, v)
                break
        else:
            path.append(v)
    return path


def hamilton_path_table(t: Tournament, cap: int | None = None) -> list[int]:
    """``HP[A]`` for every vertex subset ``A`` (``HP[0] = 0``)."""
    _check_cap(t.n, cap, DEFAULT_COVER_CAP)
    dp = _endpoint_dp(t, anchored=False)
    if dp.dtype == object:
        return [int(sum(r)) for r in dp]
    return [int(x) for x in dp.sum(axis=1, dtype=np.uint64)]


@dataclass(frozen=True)
class PathCoverProfile:
    """``counts[k]`` is the number of k-path covers; ``counts[0]`` is 0."""

    m: int
    counts: tuple[int, ...]

    def __getitem__(self, k: int) -> int:
        return self.counts[k]

    def as_list(self) -> list[int]:
        return list(self.counts[1:])


def _cover_counts(hp: list[int], n: int) -> list[int]:
    # pc[S][j]: partitions of S into j blocks, weighted by the product of block HP values.
    # Peeling the block holding the lowest vertex of S generates each partition once.
    pc: list[list[int]] = [[]] * (1 << n)
    pc[0] = [1]
    for s in range(1, 1 << n):
        low = s & -s
        rest = s ^ low
        acc = [0] * (s.bit_count() + 1)
        sub = rest
        while True:
            a = sub | low
            h = hp[a]
            if h:
                for j, c in enumerate(pc[s ^ a]):
                    if c:
                        acc[j + 1] += h * c
            if sub == 0:
                break
            sub = (sub - 1) & rest
        pc[s] = acc
    return pc[-1]


def path_cover_profile(t: Tournament, cap: int | None = None) -> PathCoverProfile:
    hp = hamilton_path_table(t, cap)
    counts = _cover_counts(hp, t.n)
    return PathCoverProfile(t.n, tuple(counts))


def count_k_path_covers(t: Tournament, k: int, cap: int | None = None) -> int:
    if not 1 <= k <= t.n:
        raise ValueError(f"k must lie in 1..{t.n}, got {k}")
    return path_cover_profile(t, cap)[k]


def set_partitions(items: list, k: int):
    """Yield every partition of ``items`` into exactly ``k`` nonempty blocks."""
    if k <= 0 or k > len(items):
        return
    if len(items) == k:
        yield [[x] for x in items]
        return
    if k == 1:
        yield [list(items)]
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest, k - 1):
        yield [[first]] + part
    for part in set_partitions(rest, k):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]


def brute_force_path_covers(t: Tournament, k: int) -> int:
    if t.n > BRUTE_COVER_MAX:
        raise CapExceededError(t.n, BRUTE_COVER_MAX, "brute-force instance")
    if not 1 <= k <= t.n:
        raise ValueError(f"k must lie in 1..{t.n}, got {k}")
    rows = t.rows
    total = 0
    for partition in set_partitions(list(range(t.n)), k):
        prod = 1
        for block in partition:
            prod *= sum(
                all(rows[a] >> b & 1 for a, b in zip(p, p[1:]))
                for p in permutations(block)
            )
            if not prod:
                break
        total += prod
    return total

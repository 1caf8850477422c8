"""Tournaments, triangular compositions and the ``.trn`` text format.

A tournament on ``n`` vertices is stored as ``n`` bit-packed rows: bit ``j``
of ``rows[i]`` is set iff the arc ``i -> j`` is present.  Vertices are the
integers ``0 .. n-1``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Sequence

import numpy as np

__all__ = [
    "InvalidTournamentError",
    "Tournament",
    "TriangularComposition",
    "make_transitive",
    "make_random",
    "all_tournaments",
    "compose_c3",
    "induced_subtournament",
    "subset_mask",
    "is_transitive",
    "has_directed_cycle",
    "directed_cycle",
    "parse",
    "serialize",
    "read_trn",
    "write_trn",
    "write_composition",
    "read_composition",
]


class InvalidTournamentError(ValueError):
    """Raised when an arc matrix or size violates the tournament invariants."""


@dataclass(frozen=True)
class Tournament:
    n: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise InvalidTournamentError(f"tournament size must be >= 1, got {self.n}")
        if len(self.rows) != self.n:
            raise InvalidTournamentError(
                f"expected {self.n} rows, got {len(self.rows)}"
            )
        full = (1 << self.n) - 1
        for i, row in enumerate(self.rows):
            if row < 0 or row & ~full:
                raise InvalidTournamentError(f"row {i} has bits outside 0..{self.n - 1}")
            if row >> i & 1:
                raise InvalidTournamentError(f"loop at row {i}, column {i}")
        for i in range(self.n):
            for j in range(i + 1, self.n):
                a = self.rows[i] >> j & 1
                b = self.rows[j] >> i & 1
                if a == b:
                    kind = "both" if a else "neither"
                    raise InvalidTournamentError(
                        f"pair ({i}, {j}) has {kind} of arcs {i}->{j} and {j}->{i}"
                        f" (row {i}, column {j})"
                    )

    @classmethod
    def from_matrix(cls, arcs: Sequence[Sequence[bool | int]] | np.ndarray) -> Tournament:
        arcs = [list(r) for r in arcs]
        n = len(arcs)
        rows = []
        for i, r in enumerate(arcs):
            if len(r) != n:
                raise InvalidTournamentError(
                    f"row {i} has length {len(r)}, expected {n}"
                )
            rows.append(sum(1 << j for j, x in enumerate(r) if x))
        return cls(n, tuple(rows))

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[tuple[int, int]]) -> Tournament:
        rows = [0] * n
        for i, j in arcs:
            rows[i] |= 1 << j
        return cls(n, tuple(rows))

    def has_arc(self, i: int, j: int) -> bool:
        return bool(self.rows[i] >> j & 1)

    @property
    def arcs(self) -> np.ndarray:
        """Dense boolean ``n x n`` matrix; ``arcs[i, j]`` iff ``i -> j``."""
        out = np.zeros((self.n, self.n), dtype=bool)
        for i, row in enumerate(self.rows):
            for j in range(self.n):
                out[i, j] = row >> j & 1
        return out

    def out_degrees(self) -> list[int]:
        return [r.bit_count() for r in self.rows]

    def in_rows(self) -> tuple[int, ...]:
        """Bitmask of in-neighbours for every vertex."""
        cols = [0] * self.n
        for i, row in enumerate(self.rows):
            for j in range(self.n):
                if row >> j & 1:
                    cols[j] |= 1 << i
        return tuple(cols)

    def is_path(self, order: Sequence[int]) -> bool:
        """True iff ``order`` is a Hamilton path of this tournament."""
        if len(order) != self.n or sorted(order) != list(range(self.n)):
            return False
        return all(self.has_arc(a, b) for a, b in zip(order, order[1:]))

    def __str__(self) -> str:
        return serialize(self)


@dataclass(frozen=True)
class TriangularComposition:
    """``C3(T1, T2, T3)``: blocks at contiguous offsets, cross arcs T1->T2->T3->T1."""

    parts: tuple[Tournament, Tournament, Tournament]
    composed: Tournament
    sizes: tuple[int, int, int] = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "sizes", tuple(t.n for t in self.parts))

    @property
    def offsets(self) -> tuple[int, int, int]:
        m1, m2, _ = self.sizes
        return (0, m1, m1 + m2)

    def part_of(self, v: int) -> int:
        """Block index (1, 2 or 3) of vertex ``v``."""
        if not 0 <= v < self.composed.n:
            raise IndexError(v)
        m1, m2, _ = self.sizes
        if v < m1:
            return 1
        return 2 if v < m1 + m2 else 3

    def block_mask(self, b: int) -> int:
        off = self.offsets[b - 1]
        return ((1 << self.sizes[b - 1]) - 1) << off

    def block(self, b: int) -> Tournament:
        """Restriction of the composed tournament to block ``b`` (1-based)."""
        return induced_subtournament(self.composed, self.block_mask(b))


def make_transitive(m: int) -> Tournament:
    if m < 1:
        raise InvalidTournamentError(f"tournament size must be >= 1, got {m}")
    full = (1 << m) - 1
    return Tournament(m, tuple(full & ~((1 << (i + 1)) - 1) for i in range(m)))


def make_random(m: int, seed: int) -> Tournament:
    """Uniform random tournament, one fair bit per pair ``(i, j), i < j``.

    Bits come from the raw 64-bit output of PCG64 seeded with ``seed``,
    consumed least-significant bit first, word by word, with pairs taken in
    lexicographic order.  Bit 1 orients ``i -> j``.
    """
    if m < 1:
        raise InvalidTournamentError(f"tournament size must be >= 1, got {m}")
    if not 0 <= seed < 1 << 64:
        raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed}")
    npairs = m * (m - 1) // 2
    words = np.random.PCG64(seed).random_raw((npairs + 63) // 64) if npairs else []
    stream = 0
    for w in reversed([int(x) for x in np.atleast_1d(words)]):
        stream = stream << 64 | w
    rows = [0] * m
    t = 0
    for i in range(m):
        for j in range(i + 1, m):
            if stream >> t & 1:
                rows[i] |= 1 << j
            else:
                rows[j] |= 1 << i
            t += 1
    return Tournament(m, tuple(rows))


def all_tournaments(m: int) -> Iterator[Tournament]:
    """Every labelled tournament on ``m`` vertices (``2**C(m,2)`` of them)."""
    if m < 1:
        raise InvalidTournamentError(f"tournament size must be >= 1, got {m}")
    pairs = [(i, j) for i in range(m) for j in range(i + 1, m)]
    for bits in range(1 << len(pairs)):
        rows = [0] * m
        for t, (i, j) in enumerate(pairs):
            if bits >> t & 1:
                rows[i] |= 1 << j
            else:
                rows[j] |= 1 << i
        yield Tournament(m, tuple(rows))


def compose_c3(t1: Tournament, t2: Tournament, t3: Tournament) -> TriangularComposition:
    parts = (t1, t2, t3)
    for idx, t in enumerate(parts, 1):
        if not isinstance(t, Tournament) or t.n < 1:
            raise InvalidTournamentError(f"part {idx} must be a nonempty tournament")
    sizes = [t.n for t in parts]
    offs = [0, sizes[0], sizes[0] + sizes[1]]
    masks = [((1 << s) - 1) << o for s, o in zip(sizes, offs)]
    rows = []
    for b, t in enumerate(parts):
        target = masks[(b + 1) % 3]
        for row in t.rows:
            rows.append(row << offs[b] | target)
    n = sum(sizes)
    return TriangularComposition(parts, Tournament(n, tuple(rows)))


def subset_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def induced_subtournament(t: Tournament, subset: int | Iterable[int]) -> Tournament:
    """Subtournament on ``subset`` (bitmask or vertex iterable), relabelled in order."""
    mask = subset if isinstance(subset, int) else subset_mask(subset)
    if mask <= 0:
        raise InvalidTournamentError("vertex subset must be nonempty")
    if mask >> t.n:
        raise InvalidTournamentError(f"vertex subset exceeds 0..{t.n - 1}")
    verts = [v for v in range(t.n) if mask >> v & 1]
    rows = []
    for v in verts:
        row = 0
        for new_j, u in enumerate(verts):
            if t.rows[v] >> u & 1:
                row |= 1 << new_j
        rows.append(row)
    return Tournament(len(verts), tuple(rows))


def is_transitive(t: Tournament) -> bool:
    """Score-sequence test: transitive iff out-degrees are a permutation of 0..n-1."""
    return sorted(t.out_degrees()) == list(range(t.n))


def directed_cycle(t: Tournament) -> list[int] | None:
    """Some directed cycle of ``t`` found by depth-first search, or ``None``."""
    WHITE, GREY, BLACK = 0, 1, 2
    colour = [WHITE] * t.n
    parent = [-1] * t.n
    for root in range(t.n):
        if colour[root] != WHITE:
            continue
        stack = [(root, iter(range(t.n)))]
        colour[root] = GREY
        while stack:
            v, it = stack[-1]
            for u in it:
                if not t.rows[v] >> u & 1:
                    continue
                if colour[u] == GREY:
                    cyc = [v]
                    while cyc[-1] != u:
                        cyc.append(parent[cyc[-1]])
                    return cyc[::-1]
                if colour[u] == WHITE:
                    colour[u] = GREY
                    parent[u] = v
                    stack.append((u, iter(range(t.n))))
                    break
            else:
                colour[v] = BLACK
                stack.pop()
    return None


def has_directed_cycle(t: Tournament) -> bool:
    return directed_cycle(t) is not None


# -- text format -------------------------------------------------------------

def serialize(t: Tournament) -> str:
    lines = [str(t.n)]
    for row in t.rows:
        lines.append("".join("1" if row >> j & 1 else "0" for j in range(t.n)))
    return "\n".join(lines) + "\n"


def parse(text: str) -> Tournament:
    lines = [ln.strip() for ln in text.strip().splitlines()]
    if not lines:
        raise InvalidTournamentError("empty input")
    try:
        n = int(lines[0])
    except ValueError:
        raise InvalidTournamentError(f"line 1: expected vertex count, got {lines[0]!r}") from None
    if n < 1:
        raise InvalidTournamentError(f"line 1: vertex count must be >= 1, got {n}")
    body = lines[1:]
    if len(body) != n:
        raise InvalidTournamentError(f"expected {n} matrix rows, got {len(body)}")
    rows = []
    for i, line in enumerate(body):
        if len(line) != n:
            raise InvalidTournamentError(
                f"row {i}: expected {n} characters, got {len(line)}"
            )
        row = 0
        for j, ch in enumerate(line):
            if ch == "1":
                row |= 1 << j
            elif ch != "0":
                raise InvalidTournamentError(f"row {i}, column {j}: invalid character {ch!r}")
        if row >> i & 1:
            raise InvalidTournamentError(f"row {i}, column {i}: diagonal must be 0")
        rows.append(row)
    return Tournament(n, tuple(rows))


def read_trn(path: str | Path) -> Tournament:
    return parse(Path(path).read_text())


def write_trn(t: Tournament, path: str | Path) -> None:
    Path(path).write_text(serialize(t))


def _sidecar(path: Path) -> Path:
    return path.with_suffix(".json")


def write_composition(comp: TriangularComposition, path: str | Path) -> None:
    """Write the composed tournament plus a ``{"m1","m2","m3"}`` JSON sidecar."""
    path = Path(path)
    write_trn(comp.composed, path)
    m1, m2, m3 = comp.sizes
    _sidecar(path).write_text(json.dumps({"m1": m1, "m2": m2, "m3": m3}) + "\n")


def read_composition(path: str | Path) -> TriangularComposition:
    path = Path(path)
    t = read_trn(path)
    sizes = json.loads(_sidecar(path).read_text())
    m = (sizes["m1"], sizes["m2"], sizes["m3"])
    if sum(m) != t.n or min(m) < 1:
        raise InvalidTournamentError(f"block sizes {m} do not partition {t.n} vertices")
    offs = (0, m[0], m[0] + m[1])
    parts = tuple(
        induced_subtournament(t, ((1 << s) - 1) << o) for s, o in zip(m, offs)
    )
    comp = compose_c3(*parts)
    if comp.composed != t:
        raise InvalidTournamentError("cross arcs are not oriented T1->T2->T3->T1")
    return comp

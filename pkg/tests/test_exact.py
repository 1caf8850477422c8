import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from tourncount import exact
from tourncount.exact import (
    CapExceededError,
    brute_force_cycles,
    brute_force_path_covers,
    brute_force_paths,
    count_hamilton_cycles,
    count_hamilton_paths,
    count_k_path_covers,
    find_hamilton_path,
    hamilton_path_table,
    path_cover_profile,
    set_partitions,
)
from tourncount.formula import stirling2
from tourncount.tournament import (
    Tournament,
    all_tournaments,
    induced_subtournament,
    is_transitive,
    make_random,
    make_transitive,
)

CYCLE3 = Tournament.from_arcs(3, [(0, 1), (1, 2), (2, 0)])
SMALL = [t for n in range(1, 6) for t in all_tournaments(n)]


def covers_by_arc_sets(t: Tournament, k: int) -> int:
    """Count arc subsets of size n-k with in/out degree <= 1 and no cycle."""
    arcs = [(i, j) for i in range(t.n) for j in range(t.n) if t.has_arc(i, j)]
    count = 0
    for mask in range(1 << len(arcs)):
        chosen = [arcs[b] for b in range(len(arcs)) if mask >> b & 1]
        if len(chosen) != t.n - k:
            continue
        outs = [a for a, _ in chosen]
        ins = [b for _, b in chosen]
        if len(set(outs)) != len(outs) or len(set(ins)) != len(ins):
            continue
        nxt = dict(chosen)
        starts = set(range(t.n)) - set(ins)
        seen = 0
        for s in starts:
            v = s
            while True:
                seen += 1
                if v not in nxt:
                    break
                v = nxt[v]
        count += seen == t.n
    return count


def test_paths_basic():
    assert all(count_hamilton_paths(make_transitive(m)) == 1 for m in range(1, 15))
    assert count_hamilton_paths(CYCLE3) == 3


def test_paths_dp_matches_brute_force_exhaustive():
    for t in all_tournaments(5):
        assert count_hamilton_paths(t) == brute_force_paths(t)


def test_cycles_basic():
    assert count_hamilton_cycles(make_transitive(1)) == 0
    assert count_hamilton_cycles(make_transitive(2)) == 0
    assert all(count_hamilton_cycles(make_transitive(m)) == 0 for m in range(1, 19))
    assert count_hamilton_cycles(CYCLE3) == 1
    assert brute_force_cycles(CYCLE3) == 1


def test_brute_cycles_on_four_vertices():
    assert {brute_force_cycles(t) for t in all_tournaments(4)} == {0, 1}


def test_cycles_dp_matches_brute_force_exhaustive():
    for t in SMALL:
        assert count_hamilton_cycles(t) == brute_force_cycles(t)


def test_cycles_dp_matches_brute_force_random():
    rng = random.Random(7)
    for i in range(200):
        t = make_random(rng.randint(5, 9), i)
        assert count_hamilton_cycles(t) == brute_force_cycles(t)


def test_caps():
    with pytest.raises(CapExceededError, match="cap of 5"):
        count_hamilton_cycles(make_transitive(6), cap=5)
    with pytest.raises(CapExceededError, match="cap of 24"):
        count_hamilton_paths(make_transitive(25))
    with pytest.raises(CapExceededError):
        path_cover_profile(make_transitive(21))
    with pytest.raises(CapExceededError):
        brute_force_cycles(make_transitive(11))
    with pytest.raises(CapExceededError):
        brute_force_path_covers(make_transitive(9), 2)


def test_object_dtype_fallback(monkeypatch):
    ts = [make_random(n, 3 * n) for n in range(3, 10)]
    expected = [(count_hamilton_paths(t), count_hamilton_cycles(t), path_cover_profile(t)) for t in ts]
    monkeypatch.setattr(exact, "_UINT64_SAFE", 0)
    got = [(count_hamilton_paths(t), count_hamilton_cycles(t), path_cover_profile(t)) for t in ts]
    assert got == expected


def test_larger_instances_are_exact():
    # every Hamilton path count of a tournament is odd
    t = make_random(18, 11)
    assert count_hamilton_paths(t) % 2 == 1
    comp_count = count_hamilton_cycles(make_random(14, 4))
    assert comp_count > 0


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 16), st.integers(0, 2**64 - 1))
def test_find_hamilton_path_validates(n, seed):
    t = make_random(n, seed)
    assert t.is_path(find_hamilton_path(t))


def test_find_hamilton_path_examples():
    assert find_hamilton_path(make_transitive(5)) == [0, 1, 2, 3, 4]
    assert CYCLE3.is_path(find_hamilton_path(CYCLE3))


def test_hamilton_path_table_matches_induced():
    t = make_random(7, 21)
    hp = hamilton_path_table(t)
    assert hp[0] == 0
    for mask in range(1, 1 << 7, 5):
        assert hp[mask] == count_hamilton_paths(induced_subtournament(t, mask))


def test_set_partitions_counts():
    for m in range(1, 8):
        for k in range(1, m + 1):
            parts = list(set_partitions(list(range(m)), k))
            assert len(parts) == stirling2(m, k)
            assert len({frozenset(map(frozenset, p)) for p in parts}) == len(parts)


def test_cover_examples():
    assert path_cover_profile(CYCLE3).as_list() == [3, 3, 1]
    assert [covers_by_arc_sets(CYCLE3, k) for k in (1, 2, 3)] == [3, 3, 1]
    assert path_cover_profile(make_transitive(4)).as_list() == [1, 7, 6, 1]
    assert brute_force_path_covers(make_transitive(6), 3) == 90
    assert brute_force_path_covers(CYCLE3, 2) == 3
    with pytest.raises(ValueError):
        count_k_path_covers(CYCLE3, 4)
    with pytest.raises(ValueError):
        count_k_path_covers(CYCLE3, 0)


def test_cover_boundaries():
    for s in range(20):
        t = make_random(1 + s % 9, s)
        prof = path_cover_profile(t)
        assert prof[t.n] == 1
        assert prof[1] == count_hamilton_paths(t)
        assert count_k_path_covers(t, 1) == count_hamilton_paths(t)


def test_cover_dp_matches_brute_force_exhaustive():
    for t in SMALL:
        prof = path_cover_profile(t)
        for k in range(1, t.n + 1):
            assert prof[k] == brute_force_path_covers(t, k)


def test_cover_dp_matches_arc_set_oracle():
    for t in all_tournaments(4):
        prof = path_cover_profile(t)
        assert prof.as_list() == [covers_by_arc_sets(t, k) for k in range(1, 5)]


@pytest.mark.parametrize("m", range(1, 11))
def test_transitive_profile_is_stirling_row(m):
    assert path_cover_profile(make_transitive(m)).as_list() == [stirling2(m, k) for k in range(1, m + 1)]


def test_profile_dominates_stirling_with_equality_iff_transitive():
    for t in SMALL:
        prof = path_cover_profile(t).as_list()
        stir = [stirling2(t.n, k) for k in range(1, t.n + 1)]
        assert all(p >= s for p, s in zip(prof, stir))
        assert (prof == stir) == is_transitive(t)


def test_redei_parity():
    for t in SMALL:
        assert count_hamilton_paths(t) % 2 == 1
    for s in range(100):
        assert count_hamilton_paths(make_random(10, s)) % 2 == 1


def test_total_covers_bounded_by_ordered_lists():
    # sum_k P(T,k) never exceeds the number of ways to cut a permutation into lists
    for s in range(10):
        t = make_random(7, s)
        assert sum(path_cover_profile(t).as_list()) <= sum(
            math.comb(6, k - 1) * math.factorial(7) // math.factorial(k) for k in range(1, 8)
        )


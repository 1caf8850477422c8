"""Seeded Monte Carlo checks, convergence tables and the small-case self-test."""

from __future__ import annotations

import math
import statistics
from fractions import Fraction
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from typing import Callable

import mpmath
import numpy as np

from . import asymptotics as asy
from .exact import (
    DEFAULT_CYCLE_CAP,
    CapExceededError,
    brute_force_cycles,
    brute_force_path_covers,
    count_hamilton_cycles,
    count_hamilton_paths,
    find_hamilton_path,
    path_cover_profile,
)
from .formula import (
    hamilton_count_triangular,
    internal_free_count,
    lower_bound,
    ordered_bell,
    stirling2,
    transitive_triangular_count,
)
from .tournament import (
    InvalidTournamentError,
    Tournament,
    all_tournaments,
    compose_c3,
    is_transitive,
    make_random,
    make_transitive,
    parse,
    serialize,
)

MC_KINDS = ("szele-paths", "szele-cycles", "wormald")
CONVERGENCE_TARGETS = ("wilf", "corollary", "integral", "internal-free")
BRUTE_CHECK_MAX = 9
DEFAULT_DPS = 60


def derive_seed(master: int, *keys: int) -> int:
    """Fixed 64-bit seed for a position ``keys`` under ``master``."""
    if not 0 <= master < 1 << 64:
        raise ValueError(f"seed must be an unsigned 64-bit integer, got {master}")
    ss = np.random.SeedSequence([master, *keys])
    return int(ss.generate_state(1, np.uint64)[0])


# -- Monte Carlo --------------------------------------------------------------

@dataclass(frozen=True)
class ExperimentReport:
    kind: str
    n: int
    samples: int
    mean: float
    variance: float
    std_error: float
    theoretical: float
    z_score: float | None
    seed: int

    def within(self, band: float = 3.0) -> bool:
        return self.z_score is not None and abs(self.z_score) <= band

    def to_dict(self) -> dict:
        return asdict(self)


def _check_kind(kind: str, n: int, cap: int | None) -> None:
    if kind not in MC_KINDS:
        raise ValueError(f"unknown experiment kind {kind!r}; expected one of {MC_KINDS}")
    if kind == "wormald" and (n < 3 or n % 3):
        raise ValueError(f"wormald needs n divisible by 3, got {n}")
    if kind == "szele-cycles" and n < 3:
        raise ValueError(f"cycle experiments need n >= 3, got {n}")
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    limit = DEFAULT_CYCLE_CAP if cap is None else cap
    if n > limit:
        raise CapExceededError(n, limit)


def sample_tournament(kind: str, n: int, seed: int) -> Tournament:
    if kind == "wormald":
        m = n // 3
        return compose_c3(*(make_random(m, derive_seed(seed, b)) for b in range(3))).composed
    return make_random(n, seed)


def _sample(args: tuple[str, int, int]) -> int:
    kind, n, seed = args
    t = sample_tournament(kind, n, seed)
    if kind == "szele-paths":
        return count_hamilton_paths(t, cap=n)
    return count_hamilton_cycles(t, cap=n)


def theoretical_mean(kind: str, n: int) -> float:
    """``n!/2^(n-1)``, ``(n-1)!/2^n`` or ``2 (n-1)!/2^n``, evaluated exactly then rounded."""
    if kind == "szele-paths":
        return float(Fraction(math.factorial(n), 2 ** (n - 1)))
    if kind == "szele-cycles":
        return float(Fraction(math.factorial(n - 1), 2 ** n))
    return float(Fraction(2 * math.factorial(n - 1), 2 ** n))


def run_montecarlo(
    kind: str,
    n: int,
    samples: int,
    seed: int,
    cap: int | None = None,
    workers: int = 1,
) -> ExperimentReport:
    """Sample ``samples`` tournaments and count exactly.

    Sample ``i`` uses ``derive_seed(seed, i)`` so the draw does not depend on
    ``workers``.
    """
    _check_kind(kind, n, cap)
    if samples < 2:
        raise ValueError(f"need at least 2 samples, got {samples}")
    jobs = [(kind, n, derive_seed(seed, i)) for i in range(samples)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            values = list(pool.map(_sample, jobs, chunksize=max(1, samples // (8 * workers))))
    else:
        values = [_sample(j) for j in jobs]
    mean = statistics.mean(values)
    var = statistics.variance(values, mean)
    mean_f, var_f = float(mean), float(var)
    se = math.sqrt(var_f / samples)
    theo = theoretical_mean(kind, n)
    z = (mean_f - theo) / se if se > 0 else None
    return ExperimentReport(kind, n, samples, mean_f, var_f, se, theo, z, seed)


# -- convergence tables --------------------------------------------------------

@dataclass(frozen=True)
class ConvergenceRow:
    m: int
    exact_log: float
    asymptotic_log: float
    ratio: float
    error: float
    ratio_text: str

    def csv_fields(self) -> list[str]:
        return [str(self.m), f"{self.exact_log:.17g}", f"{self.asymptotic_log:.17g}", self.ratio_text]


def _target(name: str) -> tuple[Callable[[int], int], Callable[[int, int], object]]:
    if name == "wilf":
        return ordered_bell, lambda m, d: asy.wilf_f_asymptotic(m, d)
    if name == "integral":
        return transitive_triangular_count, lambda m, d: asy.integral_approx_sum(m, dps=d)
    if name == "corollary":
        return transitive_triangular_count, lambda m, d: asy.corollary_asymptotic(3 * m, d)
    if name == "internal-free":
        return internal_free_count, lambda m, d: asy.internal_free_asymptotic(3 * m, d)
    raise ValueError(f"unknown convergence target {name!r}; expected one of {CONVERGENCE_TARGETS}")


def convergence_table(target: str, sizes: list[int], dps: int = DEFAULT_DPS) -> list[ConvergenceRow]:
    """Exact versus asymptotic value for each part size ``m`` (``n = 3m`` where relevant).

    Evaluated with ``dps`` decimal digits so ratios that differ from 1 by
    less than float64 resolution stay measurable.
    """
    exact_fn, asym_fn = _target(target)
    rows = []
    for m in sizes:
        exact = exact_fn(m)
        with mpmath.workdps(dps):
            e = mpmath.log(mpmath.mpf(exact))
            a = asym_fn(m, dps)
            r = mpmath.exp(a - e)
            rows.append(
                ConvergenceRow(
                    m, float(e), float(a), float(r), float(r - 1), mpmath.nstr(r, dps - 10)
                )
            )
    return rows


# -- triangular report -----------------------------------------------------------

def triangular_parts(m1: int, m2: int, m3: int, mode: str, seed: int = 0) -> tuple[Tournament, ...]:
    sizes = (m1, m2, m3)
    if mode == "transitive":
        return tuple(make_transitive(m) for m in sizes)
    if mode == "random":
        return tuple(make_random(m, derive_seed(seed, b)) for b, m in enumerate(sizes))
    raise ValueError(f"mode must be 'transitive' or 'random', got {mode!r}")


def triangular_report(
    m1: int, m2: int, m3: int, mode: str = "transitive", seed: int = 0, cap: int | None = None
) -> dict:
    parts = triangular_parts(m1, m2, m3, mode, seed)
    count = hamilton_count_triangular(*parts, cap=cap)
    bound = lower_bound(m1, m2, m3)
    n = m1 + m2 + m3
    check = None
    if n <= BRUTE_CHECK_MAX:
        check = brute_force_cycles(compose_c3(*parts).composed) == count
    return {
        "m1": m1,
        "m2": m2,
        "m3": m3,
        "mode": mode,
        "seed": seed if mode == "random" else None,
        "all_transitive": all(is_transitive(t) for t in parts),
        "count": str(count),
        "lower_bound": str(bound),
        "difference": str(count - bound),
        "equal": count == bound,
        "brute_force_check": check,
    }


# -- self-test -------------------------------------------------------------------

@dataclass(frozen=True)
class SelftestResult:
    name: str
    passed: bool
    detail: str


def _small_tournaments(max_n: int = 5):
    for n in range(1, max_n + 1):
        yield from all_tournaments(n)


def _prop_validation(corrupt: bool) -> str | None:
    texts = [serialize(t) for t in _small_tournaments(4)]
    if corrupt:
        texts.append("2\n11\n00\n")
    for text in texts:
        try:
            t = parse(text)
        except InvalidTournamentError as exc:
            return f"validation failure: {exc}"
        if serialize(t) != text:
            return "round trip changed the matrix"
    return None


def _prop_cycles() -> str | None:
    for t in _small_tournaments():
        if count_hamilton_cycles(t) != brute_force_cycles(t):
            return f"cycle DP disagrees on\n{serialize(t)}"
    return None


def _prop_random_cycles(seed: int, count: int = 50) -> str | None:
    for i in range(count):
        n = 6 + i % 4
        t = make_random(n, derive_seed(seed, i))
        if count_hamilton_cycles(t) != brute_force_cycles(t):
            return f"cycle DP disagrees on random sample {i}"
    return None


def _prop_covers() -> str | None:
    for t in _small_tournaments():
        prof = path_cover_profile(t)
        for k in range(1, t.n + 1):
            if prof[k] != brute_force_path_covers(t, k):
                return f"path-cover DP disagrees at k={k} on\n{serialize(t)}"
    return None


def _prop_redei() -> str | None:
    for t in _small_tournaments():
        if not t.is_path(find_hamilton_path(t)):
            return f"invalid Hamilton path on\n{serialize(t)}"
        if count_hamilton_paths(t) % 2 != 1:
            return f"even Hamilton path count on\n{serialize(t)}"
    return None


def _prop_stirling_domination() -> str | None:
    for t in _small_tournaments():
        prof = path_cover_profile(t)
        stir = [stirling2(t.n, k) for k in range(1, t.n + 1)]
        if any(p < s for p, s in zip(prof.as_list(), stir)):
            return f"profile below Stirling row on\n{serialize(t)}"
        if (prof.as_list() == stir) != is_transitive(t):
            return f"equality does not match transitivity on\n{serialize(t)}"
    return None


def _prop_triangular() -> str | None:
    by_size = {m: list(all_tournaments(m)) for m in (1, 2, 3)}
    for m1 in (1, 2, 3):
        for m2 in (1, 2, 3):
            for m3 in (1, 2, 3):
                bound = lower_bound(m1, m2, m3)
                for t1 in by_size[m1]:
                    for t2 in by_size[m2]:
                        for t3 in by_size[m3]:
                            h = hamilton_count_triangular(t1, t2, t3)
                            if h != count_hamilton_cycles(compose_c3(t1, t2, t3).composed):
                                return f"identity fails for sizes {(m1, m2, m3)}"
                            transitive = all(map(is_transitive, (t1, t2, t3)))
                            if h < bound or (h == bound) != transitive:
                                return f"bound/equality fails for sizes {(m1, m2, m3)}"
    return None


def run_selftest(seed: int = 0, corrupt: bool = False) -> list[SelftestResult]:
    """Exhaustive small-case oracle suite; ``corrupt`` injects a bad matrix."""
    props: list[tuple[str, Callable[[], str | None]]] = [
        ("tournament-validation", lambda: _prop_validation(corrupt)),
        ("cycles-dp-vs-brute-force", _prop_cycles),
        ("cycles-dp-vs-brute-force-random", lambda: _prop_random_cycles(seed)),
        ("path-covers-dp-vs-brute-force", _prop_covers),
        ("redei-path-and-parity", _prop_redei),
        ("stirling-domination", _prop_stirling_domination),
        ("triangular-identity-and-bound", _prop_triangular),
    ]
    out = []
    for name, fn in props:
        detail = fn()
        out.append(SelftestResult(name, detail is None, detail or "ok"))
    return out

"""Log-space evaluation of the asymptotic and expected-value formulas.

Every function returns a natural logarithm.  By default the result is a
``float``; passing ``dps`` evaluates with mpmath at that many decimal digits
and returns an ``mpmath.mpf``.  Callers comparing high-precision results must
do the arithmetic under ``mpmath.workdps`` themselves.
"""

from __future__ import annotations

import math
from contextlib import contextmanager
from dataclasses import dataclass

import mpmath

from .formula import factorial, ordered_bell, stirling_row

__all__ = [
    "NormalParams",
    "NORMAL",
    "int_log",
    "moser_bound",
    "internal_free_asymptotic",
    "wilf_f_asymptotic",
    "bender_pmf",
    "exact_pmf",
    "discretized_normal",
    "total_variation",
    "integral_approx_sum",
    "corollary_asymptotic",
    "corollary_constants",
    "szele_expected_paths",
    "szele_expected_cycles",
    "wormald_expected_cycles",
]

LN2 = math.log(2)


class _FloatOps:
    log = staticmethod(math.log)
    sqrt = staticmethod(math.sqrt)
    lgamma = staticmethod(math.lgamma)

    @staticmethod
    def pi():
        return math.pi

    @staticmethod
    def ilog(x: int) -> float:
        return int_log(x)


class _MpOps:
    log = staticmethod(mpmath.log)
    sqrt = staticmethod(mpmath.sqrt)
    lgamma = staticmethod(mpmath.loggamma)

    @staticmethod
    def pi():
        return +mpmath.pi

    @staticmethod
    def ilog(x: int):
        return mpmath.log(mpmath.mpf(x))


@contextmanager
def _ops(dps: int | None):
    if dps is None:
        yield _FloatOps
    else:
        with mpmath.workdps(dps):
            yield _MpOps


def int_log(x: int) -> float:
    """Natural log of a positive integer of any size, from its top 64 bits."""
    if x <= 0:
        raise ValueError(f"log of nonpositive integer {x}")
    b = x.bit_length()
    if b <= 1000:
        return math.log(x)
    shift = b - 64
    return math.log(x >> shift) + shift * LN2


@dataclass(frozen=True)
class NormalParams:
    """Mean and spread (per unit ``m``) of ``S(m,k) k! / f(m)`` over ``k``."""

    mu: float
    sigma: float

    @classmethod
    def default(cls) -> NormalParams:
        return cls(1 / (2 * LN2), math.sqrt(1 - LN2) / (2 * LN2))

    @property
    def sigma2(self) -> float:
        return self.sigma ** 2


NORMAL = NormalParams.default()


def moser_bound(n: int, dps: int | None = None):
    """``log (n / 3e)^n``."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    with _ops(dps) as op:
        return n * (op.log(n) - op.log(3) - 1)


def _need_multiple_of_3(n: int) -> None:
    if n < 3 or n % 3:
        raise ValueError(f"n must be a positive multiple of 3, got {n}")


def internal_free_asymptotic(n: int, dps: int | None = None):
    """``log sqrt(8 pi^3 n / 3) (n / 3e)^n``."""
    _need_multiple_of_3(n)
    with _ops(dps) as op:
        return op.log(8 * op.pi() ** 3 * n / 3) / 2 + moser_bound(n, dps)


def wilf_f_asymptotic(m: int, dps: int | None = None):
    """``log m! / (2 (log 2)^(m+1))``."""
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    with _ops(dps) as op:
        return op.lgamma(m + 1) - op.log(2) - (m + 1) * op.log(op.log(2))


def bender_pmf(m: int, k: float, params: NormalParams = NORMAL) -> float:
    """Normal density with mean ``mu m`` and variance ``sigma^2 m`` at ``k``."""
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    var = params.sigma2 * m
    return math.exp(-((k - params.mu * m) ** 2) / (2 * var)) / math.sqrt(2 * math.pi * var)


def exact_pmf(m: int) -> list[float]:
    """``[S(m,k) k! / f(m) for k in 0..m]`` from exact integers."""
    row = stirling_row(m)
    logf = int_log(ordered_bell(m))
    return [
        math.exp(int_log(row[k] * factorial(k)) - logf) if row[k] else 0.0
        for k in range(m + 1)
    ]


def discretized_normal(m: int, params: NormalParams = NORMAL) -> list[float]:
    """Normal mass on ``[k - 1/2, k + 1/2]`` for ``k`` in ``0..m``."""
    mean = params.mu * m
    scale = params.sigma * math.sqrt(2 * m)

    def cdf(x: float) -> float:
        return 0.5 * math.erfc(-(x - mean) / scale)

    return [cdf(k + 0.5) - cdf(k - 0.5) for k in range(m + 1)]


def total_variation(p: list[float], q: list[float]) -> float:
    return 0.5 * sum(abs(a - b) for a, b in zip(p, q))


def integral_approx_sum(
    m: int,
    use_wilf: bool = False,
    dps: int | None = None,
    params: NormalParams | None = None,
):
    """Normal-integral estimate of ``sum_k S(m,k)^3 k!^3 / k``.

    ``f(m)^3 sqrt(3) sqrt(2) sqrt(pi) / (3 mu sigma^2 (2 pi)^(3/2) m^2)`` with
    ``f(m)`` exact, or replaced by its asymptotic form when ``use_wilf``.
    """
    if m < 2:
        raise ValueError(f"m must be >= 2, got {m}")
    with _ops(dps) as op:
        if params is None:
            ln2 = op.log(2)
            mu = 1 / (2 * ln2)
            sigma2 = (1 - ln2) / (4 * ln2 * ln2)
        else:
            mu, sigma2 = params.mu, params.sigma2
        logf = wilf_f_asymptotic(m, dps) if use_wilf else op.ilog(ordered_bell(m))
        pi = op.pi()
        const = op.sqrt(3) * op.sqrt(2) * op.sqrt(pi) / (3 * mu * sigma2 * (2 * pi) ** 1.5 * m * m)
        return 3 * logf + op.log(const)


def corollary_constants() -> tuple[float, float]:
    """``(1 / (1 - log 2), 3 log 2)``."""
    return 1 / (1 - LN2), 3 * LN2


def corollary_asymptotic(n: int, dps: int | None = None):
    """``log (n-1)! / ((1 - log 2) (3 log 2)^n)``."""
    _need_multiple_of_3(n)
    with _ops(dps) as op:
        ln2 = op.log(2)
        return -op.log(1 - ln2) + op.lgamma(n) - n * op.log(3 * ln2)


def szele_expected_paths(n: int) -> float:
    """``log n! / 2^(n-1)``: mean Hamilton paths of a uniform random tournament."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return math.lgamma(n + 1) - (n - 1) * LN2


def szele_expected_cycles(n: int) -> float:
    """``log (n-1)! / 2^n``."""
    if n < 3:
        raise ValueError(f"n must be >= 3, got {n}")
    return math.lgamma(n) - n * LN2


def wormald_expected_cycles(n: int) -> float:
    """``log 2 (n-1)! / 2^n``: mean Hamilton cycles of ``C3`` over random parts."""
    _need_multiple_of_3(n)
    return math.lgamma(n) - (n - 1) * LN2

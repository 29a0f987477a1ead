"""Truncated Euler products, Dirichlet sums and prime-sum diagnostics for real s > 1."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .chi import ChiFunction, _prime_value, make_chi, value_at
from .exceptions import DomainError
from .mean import MEMO_LIMIT
from .primes import PrimeTable, sieve_primes
from .rotation import ONE, ZERO, UnitRotation, rot_mul, to_complex
from .summation import CompensatedSum, ComplexSum

__all__ = [
    "SeriesEval",
    "DelangeDiag",
    "Eq2Result",
    "DensityResult",
    "log_euler_product",
    "euler_product",
    "dirichlet_sum",
    "series_eval",
    "delange_diag",
    "residue_probe",
    "eq2_identity_check",
    "artin_density",
    "artin_constant",
]


@dataclass(frozen=True)
class SeriesEval:
    s: float
    cutoff: int
    euler_value: complex
    dirichlet_value: complex


@dataclass(frozen=True)
class DelangeDiag:
    partial_sums: tuple[tuple[int, complex], ...]
    product_prediction: complex


class Eq2Result(NamedTuple):
    lhs: float
    rhs: float
    k2_tail: float

    @property
    def residual(self) -> float:
        return self.rhs - self.lhs - self.k2_tail


class DensityResult(NamedTuple):
    count: int
    pi_x: int
    density: float


def _check_s(s: float) -> None:
    if not s > 1:
        raise DomainError(f"only real s > 1 is supported, got s={s}")


def _neg_log_one_minus(z: complex) -> complex:
    """Principal ``-log(1 - z)`` for ``|z| < 1``, accurate when ``z`` is small."""
    if z.imag == 0.0:
        return complex(-math.log1p(-z.real), 0.0)
    x, y = z.real, z.imag
    re = -0.5 * math.log1p(-2.0 * x + x * x + y * y)
    im = -math.atan2(-y, 1.0 - x)
    return complex(re, im)


def log_euler_product(chi: ChiFunction, s: float, cutoff: int) -> complex:
    """Sum of principal ``-log(1 - chi(p) p^-s)`` over ``p <= cutoff``, ascending."""
    _check_s(s)
    acc = ComplexSum()
    if cutoff < 2:
        return 0j
    for p in chi.table.primes(cutoff):
        r = _prime_value(chi, p)
        if r.is_zero:
            continue
        acc.add(_neg_log_one_minus(to_complex(r) * p ** (-s)))
    return acc.value


def euler_product(chi: ChiFunction, s: float, cutoff: int) -> complex:
    """``prod_{p <= cutoff} (1 - chi(p) p^-s)^-1``; zero-valued primes contribute 1."""
    _check_s(s)
    if cutoff < 2:
        return 1 + 0j
    return cmath.exp(log_euler_product(chi, s, cutoff))


def dirichlet_sum(chi: ChiFunction, s: float, cutoff: int, *, memo_limit: int = MEMO_LIMIT) -> complex:
    """``sum_{m <= cutoff} chi(m) m^-s`` with compensated accumulation."""
    _check_s(s)
    if cutoff < 1:
        raise DomainError(f"cutoff must be positive, got {cutoff}")
    chi.table.check_range(cutoff)
    acc = ComplexSum()
    acc.add(1 + 0j)
    if cutoff <= memo_limit:
        spf = chi.table.spf[: cutoff + 1].tolist()
        memo = [ZERO, ONE]
        cache: dict[int, UnitRotation] = {}
        for m in range(2, cutoff + 1):
            p = spf[m]
            pv = cache.get(p)
            if pv is None:
                pv = cache[p] = _prime_value(chi, p)
            r = rot_mul(pv, memo[m // p])
            memo.append(r)
            if not r.is_zero:
                acc.add(to_complex(r) * m ** (-s))
    else:
        for m in range(2, cutoff + 1):
            r = value_at(chi, m)
            if not r.is_zero:
                acc.add(to_complex(r) * m ** (-s))
    return acc.value


def series_eval(chi: ChiFunction, s: float, cutoff: int) -> SeriesEval:
    return SeriesEval(s, cutoff, euler_product(chi, s, cutoff), dirichlet_sum(chi, s, cutoff))


def delange_diag(chi: ChiFunction, checkpoints: Sequence[int]) -> DelangeDiag:
    """Partial sums of ``(1 - chi(p))/p`` at each checkpoint and the product
    ``prod (1 - 1/p)/(1 - chi(p)/p)`` up to the last checkpoint."""
    points = sorted(set(checkpoints))
    if not points:
        raise DomainError("need at least one checkpoint")
    chi.table.check_range(points[-1])
    primes = chi.table.primes(points[-1])
    acc = ComplexSum()
    log_prod = ComplexSum()
    sums: list[tuple[int, complex]] = []
    idx = 0
    for x in points:
        while idx < len(primes) and primes[idx] <= x:
            p = primes[idx]
            g = to_complex(_prime_value(chi, p))
            acc.add((1 - g) / p)
            # per-factor ratio; equals 1 exactly when g == 1
            ratio = (1 - 1 / p) / (1 - g / p)
            log_prod.add(cmath.log(ratio))
            idx += 1
        sums.append((x, acc.value))
    return DelangeDiag(tuple(sums), cmath.exp(log_prod.value))


def residue_probe(chi: ChiFunction, deltas: Sequence[float], cutoff: int) -> list[tuple[float, complex]]:
    """``(s, (s - 1) C_X(s, chi))`` for ``s = 1 + delta``; report only."""
    out = []
    for delta in deltas:
        if not delta > 0:
            raise DomainError(f"delta must be positive, got {delta}")
        s = 1.0 + delta
        out.append((s, delta * euler_product(chi, s, cutoff)))
    return out


def _odd_power_tail(x: float, rel: float = 1e-18) -> float:
    """``sum_{k >= 3} (1 - (-1)^k) x^k / k`` for ``0 < x < 1``."""
    acc = CompensatedSum()
    xk = x * x * x
    k = 3
    x2 = x * x
    while True:
        term = 2.0 * xk / k
        acc.add(term)
        if term < rel * acc.value:
            break
        xk *= x2
        k += 2
    return acc.value


def eq2_identity_check(table: PrimeTable, t: int, s: float, cutoff: int) -> Eq2Result:
    """Finite-truncation form of ``2 sum_{t_p = t} p^-s = log zeta(s) - log C(s, psi_t) + O(1)``.

    The O(1) term is materialised as ``sum_p sum_{k>=2} (1 - psi_t(p)^k)/(k p^{ks})``,
    so ``rhs - lhs - k2_tail`` vanishes up to rounding.
    """
    _check_s(s)
    table.check_range(cutoff)
    psi_t = make_chi("psit", table, t=t)
    one = make_chi("const", table, const=ONE)
    rhs = log_euler_product(one, s, cutoff).real - log_euler_product(psi_t, s, cutoff).real
    lhs = CompensatedSum()
    tail = CompensatedSum()
    for rec in table.records_upto(cutoff):
        if rec.t == t:
            x = rec.p ** (-s)
            lhs.add(2.0 * x)
            tail.add(_odd_power_tail(x))
    return Eq2Result(lhs.value, rhs, tail.value)


def artin_density(table: PrimeTable, t: int, x: int) -> DensityResult:
    """Share of primes ``p <= x`` with ``t_q(p) = t`` (``q`` counted in ``pi(x)`` only)."""
    if t < 1:
        raise DomainError(f"t must be positive, got {t}")
    table.check_range(x)
    count = sum(1 for rec in table.records_upto(x) if rec.t == t)
    pi_x = table.prime_count(x)
    return DensityResult(count, pi_x, count / pi_x if pi_x else 0.0)


def artin_constant(cutoff: int, primes: Sequence[int] | None = None) -> float:
    """Truncated product ``prod_{p <= cutoff} (1 - 1/(p(p-1)))``."""
    if cutoff < 2:
        raise DomainError(f"cutoff must be >= 2, got {cutoff}")
    if primes is None:
        primes = sieve_primes(cutoff)
    prod = 1.0
    for p in primes:
        if p > cutoff:
            break
        prod *= 1.0 - 1.0 / (p * (p - 1))
    return prod

"""Explicit upper bound for ``|M_n(chi)|`` when every ``chi(p) = e^{2 pi i / d_p}``.

For primes ``p_1..p_N <= n`` ordered so that ``d_1 <= ... <= d_N`` the bound is

    (1/n) sum_{k=1}^{N-1} d_k/(N-k)! * (log n + sum_{i>k} log p_i)^{N-k} / prod_{i>k} log p_i

Each term is formed in log space and the terms are combined with a
max-shifted exponential sum, so huge intermediate factorials never appear.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

from .chi import ChiFunction, _prime_value
from .exceptions import DomainError, UnsupportedFunctionError
from .mean import mean_series
from .rotation import ONE, ZERO
from .summation import logsumexp

__all__ = [
    "OrderedPrime",
    "OrderedPrimeList",
    "BoundValue",
    "BoundReport",
    "order_primes",
    "theorem1_bound",
    "theorem1_bound_direct",
    "bound_variant",
    "verify_bound",
]


class OrderedPrime(NamedTuple):
    d: int
    p: int


@dataclass(frozen=True)
class OrderedPrimeList:
    entries: tuple[OrderedPrime, ...]
    n: int

    @property
    def N(self) -> int:
        return len(self.entries)


class BoundValue(NamedTuple):
    value: float
    overflow: bool


@dataclass(frozen=True)
class BoundReport:
    n: int
    N: int
    bound: float
    actual: float
    holds: bool
    overflow: bool = False


def _exponent_denominator(chi: ChiFunction, p: int) -> int:
    r = _prime_value(chi, p)
    if r.is_zero or (r.a != 1 and r != ONE):
        raise UnsupportedFunctionError(f"{chi.name} at p={p} is {r!r}, not of the form e^(2 pi i/d)")
    return r.d


def order_primes(chi: ChiFunction, n: int, exclude: Iterable[int] = ()) -> OrderedPrimeList:
    """Primes ``<= n`` (minus ``exclude``) sorted by ``d``, ties by ascending ``p``."""
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    skip = set(exclude)
    entries = [OrderedPrime(_exponent_denominator(chi, p), p) for p in chi.table.primes(n) if p not in skip]
    entries.sort()
    return OrderedPrimeList(tuple(entries), n)


def theorem1_bound(plist: OrderedPrimeList) -> BoundValue:
    """Evaluate the bound in log space; overflow is reported, never raised."""
    entries = plist.entries
    N = len(entries)
    if N == 0:
        raise DomainError("need at least one prime")
    if any(e.p <= 1 for e in entries):
        raise DomainError("primes must exceed 1")
    if N == 1:
        return BoundValue(0.0, False)
    log_n = math.log(plist.n)
    logs: list[float] = []
    # suffix sums over i = k+1..N, built in one reverse pass
    sum_log = 0.0
    sum_loglog = 0.0
    for k in range(N - 1, 0, -1):  # k is 1-based; entries[k] is p_{k+1}
        lp = math.log(entries[k].p)
        sum_log += lp
        sum_loglog += math.log(lp)
        j = N - k
        logs.append(math.log(entries[k - 1].d) - math.lgamma(j + 1) + j * math.log(log_n + sum_log) - sum_loglog)
    log_total = logsumexp(logs) - log_n
    try:
        value = math.exp(log_total)
    except OverflowError:
        return BoundValue(math.inf, True)
    if math.isinf(value):
        return BoundValue(math.inf, True)
    return BoundValue(value, False)


def theorem1_bound_direct(plist: OrderedPrimeList) -> float:
    """Straightforward evaluation with real factorials; only sensible for small N."""
    entries = plist.entries
    N = len(entries)
    total = 0.0
    for k in range(1, N):
        suffix = [math.log(e.p) for e in entries[k:]]
        total += entries[k - 1].d / math.factorial(N - k) * (math.log(plist.n) + sum(suffix)) ** (N - k) / math.prod(suffix)
    return total / plist.n


def bound_variant(chi: ChiFunction, exclude_q: bool | None = None) -> tuple[ChiFunction, tuple[int, ...], str]:
    """Adapt ``chi`` to the bound's hypothesis at ``p = q``.

    Returns the function whose mean is measured, the excluded primes and a label.
    With ``exclude_q`` the prime ``q`` is dropped from the ordered list; since
    the function vanishes at ``q`` the mean then runs over ``m`` coprime to ``q``.
    Otherwise ``psi``/``psipow`` take the value 1 (``d = 1``) at ``q``.
    Defaults: exclusion for ``varpi``, the value-1 variant for ``psi``.
    """
    convention = chi.q_convention
    if convention is None:
        return chi, (), "exact"
    if exclude_q is None:
        exclude_q = chi.kind == "varpi"
    if exclude_q:
        fn = chi if convention.is_zero else chi.with_q_value(ZERO)
        return fn, (chi.q,), "exclude-q"
    if convention.is_zero:
        return chi.with_q_value(ONE), (), "q-as-one"
    return chi, (), "exact"


def verify_bound(
    chi: ChiFunction,
    n_values: Sequence[int],
    exclude_q: bool | None = None,
) -> list[BoundReport]:
    """Compare ``|M_n|`` against the bound for each ``n`` (one mean pass overall)."""
    if not n_values:
        return []
    if min(n_values) < 1:
        raise DomainError("n values must be positive")
    fn, excluded, _ = bound_variant(chi, exclude_q)
    n_sorted = sorted(set(n_values))
    series = mean_series(fn, n_sorted[-1], n_sorted)
    by_n = {cp.n: cp.magnitude for cp in series.checkpoints}
    reports = []
    for n in n_values:
        plist = order_primes(fn, n, excluded)
        bv = theorem1_bound(plist) if plist.N else BoundValue(0.0, False)
        actual = by_n[n]
        holds = actual <= bv.value + 1e-9 * max(1.0, bv.value)
        reports.append(BoundReport(n, plist.N, bv.value, actual, holds, bv.overflow))
    return reports

"""Running mean values ``M_n(chi) = (1/n) sum_{m<=n} chi(m)``."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

from .chi import ChiFunction, _prime_value, naive_value_at, value_at
from .exceptions import DomainError
from .rotation import ONE, ZERO, UnitRotation, rot_mul, to_complex
from .summation import ComplexSum

__all__ = [
    "Checkpoint",
    "MeanSeries",
    "geometric_schedule",
    "resolve_schedule",
    "mean_series",
    "naive_mean",
    "MEMO_LIMIT",
]

#: above this n_max the memo is dropped and each chi(m) is recomputed from the spf chain
MEMO_LIMIT = 10**8


class Checkpoint(NamedTuple):
    n: int
    mean: complex
    magnitude: float


@dataclass(frozen=True)
class MeanSeries:
    chi: str
    checkpoints: tuple[Checkpoint, ...]

    def at(self, n: int) -> Checkpoint:
        for cp in self.checkpoints:
            if cp.n == n:
                return cp
        raise KeyError(n)

    @property
    def final(self) -> Checkpoint:
        return self.checkpoints[-1]


def geometric_schedule(n_max: int) -> list[int]:
    """``{ceil(10^(j/4)) : j >= 4, <= n_max} | {n_max}``, ascending."""
    out = set()
    j = 4
    while True:
        n = math.ceil(10 ** (j / 4))
        if n > n_max:
            break
        out.add(n)
        j += 1
    out.add(n_max)
    return sorted(out)


def resolve_schedule(schedule: str | Iterable[int] | None, n_max: int) -> list[int]:
    """Turn a checkpoint rule into a sorted list of n values ending at ``n_max``.

    ``None`` or ``"geometric"`` gives the default log-spaced schedule,
    ``"all"`` every n, and an iterable is taken as explicit checkpoints.
    """
    if schedule is None or schedule == "geometric":
        return geometric_schedule(n_max)
    if schedule == "all":
        return list(range(1, n_max + 1))
    if isinstance(schedule, str):
        raise DomainError(f"unknown checkpoint rule {schedule!r}")
    points = {int(n) for n in schedule}
    if any(n < 1 or n > n_max for n in points):
        raise DomainError(f"checkpoints must lie in [1, {n_max}]")
    points.add(n_max)
    return sorted(points)


def mean_series(
    chi: ChiFunction,
    n_max: int,
    schedule: str | Iterable[int] | None = None,
    *,
    memo_limit: int = MEMO_LIMIT,
) -> MeanSeries:
    """One sequential pass over ``m = 1..n_max`` with compensated accumulation."""
    if n_max < 1:
        raise DomainError(f"n_max must be positive, got {n_max}")
    chi.table.check_range(n_max)
    points = resolve_schedule(schedule, n_max)
    spf = chi.table.spf[: n_max + 1].tolist()
    acc = ComplexSum()
    out: list[Checkpoint] = []
    idx = 0
    use_memo = n_max <= memo_limit
    memo: list[UnitRotation] = [ZERO, ONE] if use_memo else []
    prime_cache: dict[int, UnitRotation] = {}
    for m in range(1, n_max + 1):
        if m == 1:
            r = ONE
        elif use_memo:
            p = spf[m]
            pv = prime_cache.get(p)
            if pv is None:
                pv = prime_cache[p] = _prime_value(chi, p)
            r = rot_mul(pv, memo[m // p])
            memo.append(r)
        else:
            r = value_at(chi, m)
        acc.add(to_complex(r))
        if m == points[idx]:
            mean = acc.value / m
            out.append(Checkpoint(m, mean, abs(mean)))
            idx += 1
    return MeanSeries(chi.name, tuple(out))


def naive_mean(chi: ChiFunction, n: int) -> complex:
    """Oracle: each ``chi(m)`` factored by trial division, summed with ``math.fsum``."""
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    chi.table.check_range(n)
    values = [to_complex(naive_value_at(chi, m)) for m in range(1, n + 1)]
    return complex(math.fsum(v.real for v in values), math.fsum(v.imag for v in values)) / n


def naive_means(chi: ChiFunction, points: Sequence[int]) -> list[complex]:
    """Oracle means at several n, sharing one trial-division pass."""
    points = sorted(points)
    out = []
    re: list[float] = []
    im: list[float] = []
    m = 0
    for n in points:
        while m < n:
            m += 1
            z = to_complex(naive_value_at(chi, m))
            re.append(z.real)
            im.append(z.imag)
        out.append(complex(math.fsum(re), math.fsum(im)) / n)
    return out

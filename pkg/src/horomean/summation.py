"""Running compensated (Neumaier) summation for real and complex terms."""

from __future__ import annotations

import math
from typing import Iterable, Sequence

__all__ = ["CompensatedSum", "ComplexSum", "logsumexp"]


class CompensatedSum:
    """Neumaier's variant of Kahan summation; exposes the running total."""

    __slots__ = ("_sum", "_comp")

    def __init__(self, value: float = 0.0) -> None:
        self._sum = float(value)
        self._comp = 0.0

    def add(self, x: float) -> None:
        s = self._sum
        t = s + x
        if abs(s) >= abs(x):
            self._comp += (s - t) + x
        else:
            self._comp += (x - t) + s
        self._sum = t

    def extend(self, xs: Iterable[float]) -> None:
        for x in xs:
            self.add(x)

    @property
    def value(self) -> float:
        return self._sum + self._comp


class ComplexSum:
    """Component-wise compensated summation of complex numbers."""

    __slots__ = ("re", "im")

    def __init__(self) -> None:
        self.re = CompensatedSum()
        self.im = CompensatedSum()

    def add(self, z: complex) -> None:
        self.re.add(z.real)
        self.im.add(z.imag)

    @property
    def value(self) -> complex:
        return complex(self.re.value, self.im.value)


def logsumexp(logs: Sequence[float]) -> float:
    """``log(sum(exp(x)))`` with the max shifted out. Empty input gives ``-inf``."""
    if not logs:
        return -math.inf
    top = max(logs)
    if math.isinf(top):
        return top
    acc = CompensatedSum()
    for x in logs:
        acc.add(math.exp(x - top))
    return top + math.log(acc.value)

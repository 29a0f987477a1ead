"""Completely multiplicative functions defined by their values at primes.

Supported kinds (shared with the CLI): ``chi0``, ``psi``, ``varpi``,
``psit``, ``psipow`` and ``const``.

Conventions at ``p = q``, where the order of ``q`` is undefined:
``varpi(q) = psi(q) = psipow(q) = 0`` and ``psit(q) = +1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .exceptions import DomainError, RangeError
from .primes import PrimeTable, factorize
from .rotation import ONE, ZERO, UnitRotation, rot_mul, rot_pow

__all__ = ["KINDS", "ChiFunction", "make_chi", "prime_value", "value_at", "naive_value_at", "Q_CONVENTIONS"]

KINDS = ("chi0", "psi", "varpi", "psit", "psipow", "const")

#: value assigned at p = q for each kind that depends on q
Q_CONVENTIONS = {"psi": ZERO, "varpi": ZERO, "psipow": ZERO, "psit": ONE}


@dataclass(frozen=True, eq=False)
class ChiFunction:
    """A named completely multiplicative function backed by a :class:`PrimeTable`.

    ``q_value`` overrides the value at ``p = q`` (used by the bound variants).
    """

    kind: str
    table: PrimeTable = field(repr=False)
    t: int | None = None
    k: int | None = None
    const: UnitRotation | None = None
    q_value: UnitRotation | None = None

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise DomainError(f"unknown function kind {self.kind!r}; expected one of {', '.join(KINDS)}")
        if self.kind == "psit" and (self.t is None or self.t < 1):
            raise DomainError("psit needs a positive integer t")
        if self.kind == "psipow" and (self.k is None or self.k < 0):
            raise DomainError("psipow needs a non-negative integer k")
        if self.kind == "const" and self.const is None:
            raise DomainError("const needs a rotation value")

    @property
    def q(self) -> int:
        return self.table.q

    @property
    def name(self) -> str:
        """Stable descriptor, e.g. ``psit(q=2,t=1)``."""
        if self.kind == "chi0":
            base = "chi0"
        elif self.kind == "const":
            base = f"const({self.const})"
        elif self.kind == "psit":
            base = f"psit(q={self.q},t={self.t})"
        elif self.kind == "psipow":
            base = f"psipow(q={self.q},k={self.k})"
        else:
            base = f"{self.kind}(q={self.q})"
        if self.q_value is not None:
            base += f"[q->{self.q_value}]"
        return base

    @property
    def q_convention(self) -> UnitRotation | None:
        """Value used at ``p = q``, or ``None`` when the kind does not depend on ``q``."""
        if self.q_value is not None:
            return self.q_value
        return Q_CONVENTIONS.get(self.kind)

    def with_q_value(self, value: UnitRotation) -> ChiFunction:
        return replace(self, q_value=value)

    def __call__(self, m: int) -> UnitRotation:
        return value_at(self, m)


def make_chi(
    kind: str,
    table: PrimeTable,
    *,
    t: int | None = None,
    k: int | None = None,
    const: UnitRotation | None = None,
) -> ChiFunction:
    return ChiFunction(kind, table, t=t, k=k, const=const)


def _prime_value(chi: ChiFunction, p: int) -> UnitRotation:
    kind = chi.kind
    if kind == "chi0":
        return UnitRotation(1, p)
    if kind == "const":
        return chi.const
    if p == chi.table.q:
        return chi.q_convention
    table = chi.table
    if kind == "varpi":
        return UnitRotation(1, table.order(p))
    t = table.quotient(p)
    if kind == "psi":
        return UnitRotation(1, t)
    if kind == "psit":
        return UnitRotation(1, 2) if t == chi.t else ONE
    return rot_pow(UnitRotation(1, t), chi.k)


def prime_value(chi: ChiFunction, p: int) -> UnitRotation:
    """Value of ``chi`` at the prime ``p``."""
    chi.table.check_range(p)
    if not chi.table.is_prime(p):
        raise DomainError(f"{p} is not prime")
    return _prime_value(chi, p)


def value_at(chi: ChiFunction, m: int) -> UnitRotation:
    """Completely multiplicative extension, walking the spf chain of ``m``."""
    if m < 1:
        raise DomainError(f"functions are defined on positive integers only, got {m}")
    chi.table.check_range(m)
    spf = chi.table.spf
    r = ONE
    while m > 1:
        p = int(spf[m])
        r = rot_mul(r, _prime_value(chi, p))
        if r.is_zero:
            return ZERO
        m //= p
    return r


def naive_value_at(chi: ChiFunction, m: int) -> UnitRotation:
    """Same as :func:`value_at` but factors ``m`` by trial division (oracle path)."""
    if m < 1:
        raise DomainError(f"functions are defined on positive integers only, got {m}")
    if m > chi.table.limit:
        raise RangeError(f"{m} exceeds table limit {chi.table.limit}")
    r = ONE
    for p, e in factorize(m):
        r = rot_mul(r, rot_pow(_prime_value(chi, p), e))
    return r

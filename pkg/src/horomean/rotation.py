"""Exact roots of unity stored as reduced rotations ``a/d`` (mod 1)."""

from __future__ import annotations

import math
from functools import lru_cache

from .exceptions import DomainError

__all__ = ["UnitRotation", "ZERO", "ONE", "rot_mul", "rot_pow", "to_complex", "parse_rotation"]


class UnitRotation:
    """Either the zero value or ``e^{2 pi i a/d}`` with ``0 <= a < d``, ``gcd(a, d) = 1``.

    Instances are immutable and normalized on construction, so equal
    rotations compare and hash equal.
    """

    __slots__ = ("a", "d")

    def __init__(self, a: int = 0, d: int = 1) -> None:
        if d == 0:
            # d == 0 is reserved for the zero value (see ``ZERO``)
            object.__setattr__(self, "a", 0)
            object.__setattr__(self, "d", 0)
            return
        if d < 0:
            raise DomainError(f"rotation denominator must be positive, got {d}")
        a %= d
        g = math.gcd(a, d)
        if a == 0:
            a, d = 0, 1
        elif g > 1:
            a, d = a // g, d // g
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError("UnitRotation is immutable")

    @property
    def is_zero(self) -> bool:
        return self.d == 0

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, UnitRotation):
            return NotImplemented
        return self.a == other.a and self.d == other.d

    def __hash__(self) -> int:
        return hash((self.a, self.d))

    def __mul__(self, other: UnitRotation) -> UnitRotation:
        return rot_mul(self, other)

    def __pow__(self, k: int) -> UnitRotation:
        return rot_pow(self, k)

    def __complex__(self) -> complex:
        return to_complex(self)

    def __repr__(self) -> str:
        return "ZERO" if self.is_zero else f"Rot({self.a},{self.d})"

    def __str__(self) -> str:
        return "0" if self.is_zero else f"{self.a}/{self.d}"


ZERO = UnitRotation(0, 0)
ONE = UnitRotation(0, 1)


def rot_mul(r1: UnitRotation, r2: UnitRotation) -> UnitRotation:
    """Multiply two rotations (add their angles mod 1). Zero absorbs."""
    if r1.d == 0 or r2.d == 0:
        return ZERO
    if r1.d == 1:
        return r2
    if r2.d == 1:
        return r1
    return UnitRotation(r1.a * r2.d + r2.a * r1.d, r1.d * r2.d)


def rot_pow(r: UnitRotation, k: int) -> UnitRotation:
    """Raise a rotation to a non-negative integer power."""
    if k < 0:
        raise DomainError(f"negative exponent {k}")
    if r.d == 0:
        if k == 0:
            raise DomainError("0**0 is undefined")
        return ZERO
    return UnitRotation(r.a * (k % r.d), r.d)


@lru_cache(maxsize=1 << 16)
def to_complex(r: UnitRotation) -> complex:
    """Double-precision value of ``r``; exact for d in {1, 2, 4} and for zero."""
    d = r.d
    if d == 0:
        return 0j
    if d == 1:
        return 1 + 0j
    if d == 2:
        return -1 + 0j
    if d == 4:
        return 1j if r.a == 1 else -1j
    # reduce to a quadrant with exact integer arithmetic before calling trig
    quadrant, rem = divmod(4 * r.a, d)
    theta = 0.5 * math.pi * rem / d
    c, s = math.cos(theta), math.sin(theta)
    if quadrant == 0:
        return complex(c, s)
    if quadrant == 1:
        return complex(-s, c)
    if quadrant == 2:
        return complex(-c, -s)
    return complex(s, -c)


def parse_rotation(text: str) -> UnitRotation:
    """Inverse of ``str(rotation)``: accepts ``"0"`` or ``"a/d"``."""
    text = text.strip()
    if text == "0":
        return ZERO
    try:
        a, d = text.split("/")
        a_i, d_i = int(a), int(d)
    except ValueError:
        raise DomainError(f"cannot parse rotation {text!r}") from None
    if d_i <= 0:
        raise DomainError(f"cannot parse rotation {text!r}")
    return UnitRotation(a_i, d_i)

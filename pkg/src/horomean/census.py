"""Prime censuses over order data and the irreducible-factor count of ``x^m - 1``."""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from .exceptions import ConsistencyError, DomainError
from .primes import PrimeTable, factorize, smallest_prime_factors

__all__ = [
    "CensusRow",
    "sk_census",
    "large_order_census",
    "order_mod",
    "iq_count",
    "iq_terms",
    "cyclotomic_coset_count",
]


class CensusRow(NamedTuple):
    p: int
    f: int
    t: int
    flag: bool


def sk_census(table: PrimeTable, k: int, x: int) -> tuple[int, list[CensusRow]]:
    """Primes ``p <= x``, ``p != q``, whose ``t_q(p)`` does not divide ``k``."""
    if k < 1:
        raise DomainError(f"k must be positive, got {k}")
    rows = [CensusRow(r.p, r.f, r.t, k % r.t != 0) for r in table.records_upto(x)]
    return sum(row.flag for row in rows), rows


def large_order_census(table: PrimeTable, x: int) -> tuple[int, list[CensusRow]]:
    """Primes ``p <= x``, ``p != q``, with ``f_q(p) > (p - 1)/log p`` (natural log)."""
    rows = [CensusRow(r.p, r.f, r.t, r.f > (r.p - 1) / math.log(r.p)) for r in table.records_upto(x)]
    return sum(row.flag for row in rows), rows


def _order_mod_prime_power(q: int, p: int, e: int) -> int:
    # order mod p, then lift: ord mod p^j is ord mod p^(j-1) or p times it
    f = p - 1
    for ell, _ in factorize(p - 1):
        while f % ell == 0 and pow(q, f // ell, p) == 1:
            f //= ell
    modulus = p
    for _ in range(1, e):
        modulus *= p
        if pow(q, f, modulus) != 1:
            f *= p
    return f


def order_mod(q: int, d: int, spf: np.ndarray | None = None) -> int:
    """Multiplicative order of ``q`` modulo any ``d >= 1`` with ``gcd(q, d) = 1``.

    ``order_mod(q, 1) == 1`` by convention (the trivial group).
    """
    if d < 1:
        raise DomainError(f"modulus must be positive, got {d}")
    if math.gcd(q, d) != 1:
        raise DomainError(f"{q} is not a unit modulo {d}")
    f = 1
    for p, e in factorize(d, spf):
        f = math.lcm(f, _order_mod_prime_power(q, p, e))
    return f


def _divisors(factors: list[tuple[int, int]]) -> list[int]:
    divs = [1]
    for p, e in factors:
        divs = [d * p**j for d in divs for j in range(e + 1)]
    return sorted(divs)


def _phi(factors: list[tuple[int, int]]) -> int:
    out = 1
    for p, e in factors:
        out *= (p - 1) * p ** (e - 1)
    return out


def iq_terms(q: int, m: int, spf: np.ndarray | None = None) -> list[tuple[int, int, int]]:
    """``(d, phi(d), f_q(d))`` for every divisor ``d`` of ``m``."""
    if m < 1:
        raise DomainError(f"m must be positive, got {m}")
    if math.gcd(m, q) != 1:
        raise DomainError(f"gcd({m}, {q}) != 1")
    if spf is None or len(spf) <= m:
        spf = smallest_prime_factors(max(m, 2))
    out = []
    for d in _divisors(factorize(m, spf)):
        fd = factorize(d, spf)
        out.append((d, _phi(fd), order_mod(q, d, spf)))
    return out


def iq_count(q: int, m: int, spf: np.ndarray | None = None) -> int:
    """Number of irreducible factors of ``x^m - 1`` over the field with ``q`` elements,
    as ``sum_{d | m} phi(d) / f_q(d)``.

    Raises :class:`ConsistencyError` if some ``f_q(d)`` fails to divide ``phi(d)``.
    """
    total = 0
    for d, phi_d, f_d in iq_terms(q, m, spf):
        quotient, rem = divmod(phi_d, f_d)
        if rem:
            raise ConsistencyError(f"f_{q}({d}) = {f_d} does not divide phi({d}) = {phi_d}")
        total += quotient
    return total


def cyclotomic_coset_count(q: int, m: int) -> int:
    """Number of orbits of ``a -> q*a mod m`` on ``Z/mZ``, by direct enumeration."""
    if m < 1:
        raise DomainError(f"m must be positive, got {m}")
    if math.gcd(m, q) != 1:
        raise DomainError(f"gcd({m}, {q}) != 1")
    seen = bytearray(m)
    orbits = 0
    for a in range(m):
        if seen[a]:
            continue
        orbits += 1
        b = a
        while not seen[b]:
            seen[b] = 1
            b = b * q % m
    return orbits

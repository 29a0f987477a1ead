"""Prime sieve, smallest-prime-factor table and multiplicative orders.

A :class:`PrimeTable` holds, for a fixed prime base ``q`` and limit ``x``,
one :class:`PrimeRecord` ``(p, f, t)`` per prime ``p <= x`` other than
``q``, where ``f`` is the order of ``q`` modulo ``p`` and ``t = (p-1)/f``.
"""

from __future__ import annotations

import bisect
import math
import os
import zlib
from pathlib import Path
from typing import NamedTuple, Sequence

import numpy as np

from .exceptions import DomainError, RangeError, TableLoadError, TableVersionError

__all__ = [
    "PrimeRecord",
    "PrimeTable",
    "sieve_primes",
    "smallest_prime_factors",
    "is_prime",
    "factorize",
    "multiplicative_order",
    "build_prime_table",
    "save_table",
    "load_table",
    "TABLE_HEADER",
]

TABLE_HEADER = "horomean-ptable v1"


class PrimeRecord(NamedTuple):
    p: int
    f: int
    t: int


def _prime_mask(x: int) -> np.ndarray:
    mask = np.ones(x + 1, dtype=bool)
    mask[:2] = False
    mask[4::2] = False
    for p in range(3, math.isqrt(x) + 1, 2):
        if mask[p]:
            mask[p * p :: 2 * p] = False
    return mask


def sieve_primes(x: int) -> list[int]:
    """All primes ``<= x`` in ascending order."""
    if x < 2:
        raise DomainError(f"sieve limit must be >= 2, got {x}")
    return np.flatnonzero(_prime_mask(x)).tolist()


def smallest_prime_factors(limit: int) -> np.ndarray:
    """Array ``spf`` with ``spf[m]`` the least prime dividing ``m`` (``spf[0] = spf[1] = 0``)."""
    if limit < 1:
        raise DomainError(f"spf limit must be >= 1, got {limit}")
    spf = np.zeros(limit + 1, dtype=np.int64)
    spf[2::2] = 2
    for p in range(3, math.isqrt(limit) + 1, 2):
        if spf[p] == 0:
            block = spf[p * p :: p]
            block[block == 0] = p
    rest = np.flatnonzero(spf == 0)
    rest = rest[rest >= 2]
    spf[rest] = rest
    return spf


def is_prime(n: int) -> bool:
    """Deterministic trial division; only used to validate scalar inputs."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, math.isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def factorize(n: int, spf: np.ndarray | None = None) -> list[tuple[int, int]]:
    """Prime factorization of ``n >= 1`` as ascending ``(prime, exponent)`` pairs.

    Uses the spf table when ``n`` is within it, otherwise trial division.
    """
    if n < 1:
        raise DomainError(f"cannot factor {n}")
    out: list[tuple[int, int]] = []
    if spf is not None and n < len(spf):
        while n > 1:
            p = int(spf[n])
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        return out
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


def _order_from_factors(q: int, p: int, factors: Sequence[tuple[int, int]]) -> int:
    f = p - 1
    for ell, _ in factors:
        while f % ell == 0 and pow(q, f // ell, p) == 1:
            f //= ell
    return f


def multiplicative_order(q: int, p: int, spf: np.ndarray | None = None) -> int:
    """Order of the prime ``q`` modulo the prime ``p``.

    Starts from ``p - 1`` and strips prime factors while ``q^f = 1 (mod p)``
    still holds.

    >>> multiplicative_order(2, 7)
    3
    """
    if p == q:
        raise DomainError(f"order of {q} modulo itself is undefined")
    if not is_prime(q) or not is_prime(p):
        raise DomainError(f"both arguments must be prime, got q={q}, p={p}")
    return _order_from_factors(q, p, factorize(p - 1, spf))


class PrimeTable:
    """Per-prime order data for a fixed base ``q`` up to ``limit``.

    Immutable after construction. ``records`` excludes ``q`` itself.
    """

    def __init__(self, q: int, limit: int, records: Sequence[PrimeRecord], spf: np.ndarray | None = None):
        self.q = q
        self.limit = limit
        self.records: tuple[PrimeRecord, ...] = tuple(records)
        if spf is None:
            spf = smallest_prime_factors(limit)
        spf.setflags(write=False)
        self.spf = spf
        orders = np.zeros(limit + 1, dtype=np.int64)
        for rec in self.records:
            orders[rec.p] = rec.f
        orders.setflags(write=False)
        self._orders = orders
        self._ps = [rec.p for rec in self.records]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PrimeTable):
            return NotImplemented
        return (self.q, self.limit, self.records) == (other.q, other.limit, other.records)

    def __len__(self) -> int:
        return len(self.records)

    def __repr__(self) -> str:
        return f"PrimeTable(q={self.q}, limit={self.limit}, count={len(self.records)})"

    def check_range(self, m: int) -> None:
        if m > self.limit:
            raise RangeError(f"{m} exceeds table limit {self.limit}")

    def is_prime(self, m: int) -> bool:
        self.check_range(m)
        return m >= 2 and int(self.spf[m]) == m

    def order(self, p: int) -> int:
        """``f_q(p)`` for a prime ``p != q`` in range."""
        self.check_range(p)
        f = int(self._orders[p])
        if f == 0:
            raise DomainError(f"{p} is not a tabulated prime for q={self.q}")
        return f

    def quotient(self, p: int) -> int:
        return (p - 1) // self.order(p)

    def primes(self, upto: int | None = None) -> list[int]:
        """All primes ``<= upto`` (default: the limit), including ``q``."""
        upto = self.limit if upto is None else upto
        self.check_range(upto)
        if upto < 2:
            return []
        idx = np.flatnonzero(self.spf[: upto + 1] == np.arange(upto + 1))
        return idx[idx >= 2].tolist()

    def records_upto(self, x: int) -> list[PrimeRecord]:
        self.check_range(x)
        return list(self.records[: bisect.bisect_right(self._ps, x)])

    def prime_count(self, x: int) -> int:
        """``pi(x)``, counting ``q`` when ``q <= x``."""
        self.check_range(x)
        if x < 2:
            return 0
        return int(np.count_nonzero(self.spf[2 : x + 1] == np.arange(2, x + 1)))


def build_prime_table(q: int, x: int) -> PrimeTable:
    """Tabulate ``(p, f_q(p), t_q(p))`` for every prime ``p <= x``, ``p != q``."""
    if x < 2:
        raise DomainError(f"table limit must be >= 2, got {x}")
    if not is_prime(q):
        raise DomainError(f"base q must be prime, got {q}")
    spf = smallest_prime_factors(x)
    primes = np.flatnonzero(spf == np.arange(x + 1))
    spf_list = spf.tolist()
    records = []
    for p in primes.tolist():
        if p < 2 or p == q:
            continue
        n = p - 1
        f = n
        while n > 1:
            ell = spf_list[n]
            while n % ell == 0:
                n //= ell
            while f % ell == 0 and pow(q, f // ell, p) == 1:
                f //= ell
        records.append(PrimeRecord(p, f, (p - 1) // f))
    return PrimeTable(q, x, records, spf)


def _record_block(table: PrimeTable) -> str:
    return "".join(f"{r.p},{r.f},{r.t}\n" for r in table.records)


def save_table(table: PrimeTable, path: str | os.PathLike) -> None:
    """Write ``table`` in the versioned text cache format (atomically)."""
    block = _record_block(table)
    crc = zlib.crc32(block.encode("ascii"))
    text = f"{TABLE_HEADER}\nq={table.q} x={table.limit} count={len(table.records)}\n{block}crc32={crc:08x}\n"
    path = Path(path)
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text, encoding="ascii")
    os.replace(tmp, path)


def load_table(path: str | os.PathLike) -> PrimeTable:
    """Read a table written by :func:`save_table`, verifying header and checksum."""
    try:
        text = Path(path).read_text(encoding="ascii")
    except (OSError, UnicodeDecodeError) as exc:
        raise TableLoadError(f"cannot read {path}: {exc}") from exc
    lines = text.split("\n")
    if not lines or not lines[0].startswith("horomean-ptable"):
        raise TableLoadError(f"{path}: not a horomean prime table")
    if lines[0] != TABLE_HEADER:
        raise TableVersionError(f"{path}: unsupported header {lines[0]!r}")
    if len(lines) < 4 or lines[-1] != "":
        raise TableLoadError(f"{path}: truncated file")
    try:
        fields = dict(item.split("=") for item in lines[1].split(" "))
        q, x, count = int(fields["q"]), int(fields["x"]), int(fields["count"])
    except (ValueError, KeyError) as exc:
        raise TableLoadError(f"{path}: malformed parameter line {lines[1]!r}") from exc
    body, trailer = lines[2:-2], lines[-2]
    if not trailer.startswith("crc32=") or len(body) != count:
        raise TableLoadError(f"{path}: truncated file")
    block = "".join(line + "\n" for line in body)
    if f"{zlib.crc32(block.encode('ascii')):08x}" != trailer[len("crc32=") :]:
        raise TableLoadError(f"{path}: checksum mismatch")
    try:
        records = [PrimeRecord(*map(int, line.split(","))) for line in body]
    except (ValueError, TypeError) as exc:
        raise TableLoadError(f"{path}: malformed record") from exc
    return PrimeTable(q, x, records)

import math
import random

import pytest

from horomean.bound import (
    OrderedPrime,
    OrderedPrimeList,
    bound_variant,
    order_primes,
    theorem1_bound,
    theorem1_bound_direct,
    verify_bound,
)
from horomean.chi import make_chi, value_at
from horomean.exceptions import DomainError, UnsupportedFunctionError
from horomean.rotation import ONE, to_complex


def test_order_primes_examples(table2_small):
    assert order_primes(make_chi("chi0", table2_small), 3).entries == ((2, 2), (3, 3))
    psi_variant = make_chi("psi", table2_small).with_q_value(ONE)
    assert order_primes(psi_variant, 7).entries == ((1, 2), (1, 3), (1, 5), (2, 7))
    varpi = make_chi("varpi", table2_small)
    assert order_primes(varpi, 7, exclude=[2]).entries == ((2, 3), (3, 7), (4, 5))


def test_order_primes_rejects_unsupported(table2_small):
    with pytest.raises(UnsupportedFunctionError):
        order_primes(make_chi("varpi", table2_small), 7)  # zero at q
    with pytest.raises(UnsupportedFunctionError):
        # psi^3 at p = 73 (t = 8) is e^(2 pi i 3/8)
        order_primes(make_chi("psipow", table2_small, k=3).with_q_value(ONE), 100)


def test_order_primes_is_sorted_and_complete(table2_small):
    plist = order_primes(make_chi("varpi", table2_small), 5000, exclude=[2])
    assert list(plist.entries) == sorted(plist.entries)
    assert sorted(e.p for e in plist.entries) == table2_small.primes(5000)[1:]
    assert plist.N == table2_small.prime_count(5000) - 1


def test_closed_forms(table2_small):
    chi0 = make_chi("chi0", table2_small)
    assert theorem1_bound(order_primes(chi0, 3)).value == pytest.approx(4 / 3, abs=1e-12)
    assert theorem1_bound(order_primes(chi0, 2)).value == 0.0
    assert theorem1_bound(OrderedPrimeList((OrderedPrime(5, 11),), 11)).value == 0.0
    with pytest.raises(DomainError):
        theorem1_bound(OrderedPrimeList((), 1))
    with pytest.raises(DomainError):
        theorem1_bound(OrderedPrimeList((OrderedPrime(1, 1), OrderedPrime(1, 2)), 3))


def test_log_space_matches_direct():
    rng = random.Random(7)
    primes = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71]
    for N in range(2, 21):
        for _ in range(5):
            ps = rng.sample(primes, N)
            entries = sorted(OrderedPrime(rng.randint(1, 50), p) for p in ps)
            plist = OrderedPrimeList(tuple(entries), max(ps) + rng.randint(0, 30))
            assert theorem1_bound(plist).value == pytest.approx(theorem1_bound_direct(plist), rel=1e-10)


def test_bound_positive_and_finite_for_moderate_n(table2_small):
    chi0 = make_chi("chi0", table2_small)
    for n in range(3, 600, 7):
        bv = theorem1_bound(order_primes(chi0, n))
        assert 0 < bv.value < math.inf and not bv.overflow


def test_overflow_flag(table2_small):
    bv = theorem1_bound(order_primes(make_chi("chi0", table2_small), 10**4))
    assert bv.overflow and bv.value == math.inf


def test_ties_are_broken_by_prime(table2_small):
    # The bound depends on which prime sits in each suffix, so the order
    # among equal d matters and must be fixed: ascending p.
    a = OrderedPrimeList((OrderedPrime(1, 2), OrderedPrime(1, 3), OrderedPrime(2, 7)), 7)
    b = OrderedPrimeList((OrderedPrime(1, 3), OrderedPrime(1, 2), OrderedPrime(2, 7)), 7)
    assert theorem1_bound(a).value != pytest.approx(theorem1_bound(b).value)
    psi = make_chi("psi", table2_small).with_q_value(ONE)
    entries = order_primes(psi, 3000).entries
    for x, y in zip(entries, entries[1:]):
        assert x.d < y.d or (x.d == y.d and x.p < y.p)


def test_verify_examples(table2_small):
    chi0 = make_chi("chi0", table2_small)
    reports = verify_bound(chi0, [2, 10, 100, 1000])
    assert all(r.holds for r in reports)
    r2 = reports[0]
    assert (r2.n, r2.N, r2.bound, r2.actual) == (2, 1, 0.0, 0.0)
    varpi = verify_bound(make_chi("varpi", table2_small), [10, 100])
    assert all(r.holds for r in varpi)
    assert [r.N for r in varpi] == [3, 24]


def test_variants(table2_small):
    psi = make_chi("psi", table2_small)
    fn, excluded, label = bound_variant(psi)
    assert label == "q-as-one" and excluded == () and fn.q_convention == ONE
    fn, excluded, label = bound_variant(make_chi("varpi", table2_small))
    assert label == "exclude-q" and excluded == (2,)
    fn, excluded, label = bound_variant(psi, exclude_q=True)
    assert label == "exclude-q" and fn is psi
    fn, excluded, label = bound_variant(make_chi("psit", table2_small, t=1), exclude_q=True)
    assert fn.q_convention.is_zero
    assert bound_variant(make_chi("chi0", table2_small))[2] == "exact"


def test_varpi_mean_over_coprime_m(table2_small):
    # with q excluded the measured mean is (1/n) sum over odd m of varpi(m)
    varpi = make_chi("varpi", table2_small)
    report = verify_bound(varpi, [101])[0]
    total = sum(to_complex(value_at(varpi, m)) for m in range(1, 102, 2))
    assert report.actual == pytest.approx(abs(total) / 101, abs=1e-14)

"""Mean values and Dirichlet series of cyclotomic multiplicative functions.

Quick start::

    from horomean import build_prime_table, make_chi, mean_series
    table = build_prime_table(2, 10**5)
    series = mean_series(make_chi("psi", table), 10**5)
"""

from .analytic import (
    artin_constant,
    artin_density,
    delange_diag,
    dirichlet_sum,
    eq2_identity_check,
    euler_product,
    residue_probe,
    series_eval,
)
from .bound import order_primes, theorem1_bound, verify_bound
from .census import cyclotomic_coset_count, iq_count, large_order_census, order_mod, sk_census
from .chi import KINDS, ChiFunction, make_chi, naive_value_at, prime_value, value_at
from .exceptions import (
    ConsistencyError,
    DomainError,
    HoromeanError,
    RangeError,
    TableLoadError,
    TableVersionError,
    UnsupportedFunctionError,
)
from .mean import MeanSeries, mean_series, naive_mean
from .primes import (
    PrimeRecord,
    PrimeTable,
    build_prime_table,
    load_table,
    multiplicative_order,
    save_table,
    sieve_primes,
    smallest_prime_factors,
)
from .rotation import ONE, ZERO, UnitRotation, rot_mul, rot_pow, to_complex

__version__ = "0.1.0"

"""Closed-form values and upper bounds for rho_d(N).

``rho_d(N)`` is the largest size of a subset of [N] with no product of
distinct elements equal to a perfect d-th power. Everything here is a
function of prime counts and Davenport constants of Z_d^r.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Callable

from .davenport import GroupSpec, davenport_upper_bound_real, davenport_value
from .errors import InvalidArgument
from .primes import PrimeTable, build_table, is_prime_power, nth_prime, omega, pi

DavenportEvaluator = Callable[[GroupSpec | None], tuple[int, bool]]


def _check(d, N):
    if d < 2:
        raise InvalidArgument(f"d must be >= 2, got {d}")
    if N < 1:
        raise InvalidArgument(f"N must be >= 1, got {N}")


def _power_group(d, r):
    return GroupSpec.power(d, r) if r > 0 else None


def main_term(d: int, N: int, table: PrimeTable) -> int:
    """Sum of pi(N // k) for k = 1 .. d-1."""
    _check(d, N)
    return sum(pi(table, N // k) for k in range(1, d))


def nth_prime_small(k: int) -> int:
    """p_k without a caller-supplied table."""
    limit = 32
    while True:
        table = build_table(limit)
        if len(table.primes) >= k:
            return nth_prime(table, k)
        limit *= 2


def threshold(d: int) -> int:
    """Smallest N covered by the exact prime-power result: 2^d * p_d."""
    if d < 2:
        raise InvalidArgument(f"d must be >= 2, got {d}")
    return 2**d * nth_prime_small(d)


def thm4_upper(d: int, N: int, table: PrimeTable, dav: DavenportEvaluator = davenport_value) -> int:
    main = main_term(d, N, table)
    r = pi(table, N // d)
    D, _ = dav(_power_group(d, r))
    return main + D - (d - 1) * r - 1


def thm5_upper(d: int, N: int, table: PrimeTable, dav: DavenportEvaluator = davenport_value) -> int:
    main = main_term(d, N, table)
    D, _ = dav(_power_group(d, pi(table, math.isqrt(N))))
    return main + d * D


def thm5_upper_tight(d: int, N: int, table: PrimeTable, dav: DavenportEvaluator = davenport_value) -> int:
    """Variant with d * (D - 1): the multiset T has at most D - 1 elements."""
    main = main_term(d, N, table)
    D, _ = dav(_power_group(d, pi(table, math.isqrt(N))))
    return main + d * (D - 1)


def corollary_upper(d: int, N: int, table: PrimeTable) -> tuple[int, float]:
    """main_term + d ln d * pi(sqrt N), evaluated literally."""
    real = main_term(d, N, table) + d * math.log(d) * pi(table, math.isqrt(N))
    return math.floor(real), real


def corollary_derived(d: int, N: int, table: PrimeTable) -> tuple[int, float]:
    """main_term + d * B where B is the logarithmic bound for Z_d^r, r = pi(sqrt N)."""
    r = pi(table, math.isqrt(N))
    grp = _power_group(d, r)
    dav = 1.0 if grp is None else davenport_upper_bound_real(grp)
    real = main_term(d, N, table) + d * dav
    return math.floor(real), real


def remark_identity_lhs_rhs(d: int, table: PrimeTable) -> tuple[int, int]:
    if d < 2:
        raise InvalidArgument(f"d must be >= 2, got {d}")
    m = 2 * d - 2
    lhs = sum(pi(table, m // k) for k in range(1, d))
    rhs = sum(omega(n, table) for n in range(1, m + 1))
    return lhs, rhs


def remark_inequality(d: int, table: PrimeTable) -> bool:
    if d < 4:
        raise InvalidArgument(f"the inequality is only asserted for d >= 4, got {d}")
    m = 2 * d - 2
    return sum(pi(table, m // k) for k in range(1, d)) >= m


def exact_value_if_applicable(d: int, N: int, table: PrimeTable) -> int | None:
    _check(d, N)
    if not is_prime_power(d) or N < threshold(d):
        return None
    return main_term(d, N, table)


@dataclass
class BoundReport:
    d: int
    N: int
    main_term: int
    thm4_upper: int
    thm5_upper: int
    thm5_upper_tight: int
    corollary_upper: int
    corollary_upper_real: float
    corollary_derived: int
    corollary_derived_real: float
    is_prime_power_d: bool
    davenport_is_bound: bool
    threshold: int
    exact_claimed: int | None = None
    warnings: list[str] = field(default_factory=list)

    def as_dict(self):
        return asdict(self)


def bound_report(d: int, N: int, table: PrimeTable) -> BoundReport:
    _check(d, N)
    main = main_term(d, N, table)
    _, flagged = davenport_value(_power_group(d, max(pi(table, N // d), 1)))
    cor, cor_real = corollary_upper(d, N, table)
    der, der_real = corollary_derived(d, N, table)
    rep = BoundReport(
        d=d,
        N=N,
        main_term=main,
        thm4_upper=thm4_upper(d, N, table),
        thm5_upper=thm5_upper(d, N, table),
        thm5_upper_tight=thm5_upper_tight(d, N, table),
        corollary_upper=cor,
        corollary_upper_real=cor_real,
        corollary_derived=der,
        corollary_derived_real=der_real,
        is_prime_power_d=is_prime_power(d),
        davenport_is_bound=flagged,
        threshold=threshold(d),
        exact_claimed=exact_value_if_applicable(d, N, table),
    )
    if flagged:
        rep.warnings.append(
            f"d={d} is not a prime power: D(Z_d^r) replaced by the logarithmic upper bound (bound-of-a-bound)"
        )
    if cor_real < der_real:
        rep.warnings.append(
            "printed corollary term d*ln(d)*pi(sqrt N) is smaller than the term derived from "
            f"the sqrt-smooth bound with the logarithmic bound: {cor_real:.3f} < {der_real:.3f}"
        )
    return rep

"""Prime sieve, prime counting, and trial-division factorization."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import isqrt

import gmpy2
import numpy as np

from .errors import IncompleteTable, InvalidArgument, OutOfRange

MAX_SIEVE_LIMIT = 10**7


@dataclass(frozen=True, eq=False)
class PrimeTable:
    """Sieve of Eratosthenes up to ``limit`` with a cumulative prime count.

    ``is_prime`` and ``pi_cache`` are indexed directly by the integer, so
    both have length ``limit + 1``. The arrays are made read-only.
    """

    limit: int
    is_prime: np.ndarray = field(repr=False)
    primes: np.ndarray = field(repr=False)
    pi_cache: np.ndarray = field(repr=False)

    def __len__(self):
        return len(self.primes)

    def __contains__(self, n):
        return 0 <= n <= self.limit and bool(self.is_prime[n])

    def pi(self, n):
        return pi(self, n)

    def nth_prime(self, k):
        return nth_prime(self, k)

    def factorize(self, n):
        return factorize(n, self)

    def prime_index(self, p):
        """1-based position of the prime ``p`` (so ``prime_index(2) == 1``)."""
        if p not in self:
            raise InvalidArgument(f"{p} is not a prime <= {self.limit}")
        return int(self.pi_cache[p])


@dataclass(frozen=True)
class Factorization:
    value: int
    factors: tuple[tuple[int, int], ...]

    def primes(self):
        return [p for p, _ in self.factors]

    def multiply(self):
        out = 1
        for p, e in self.factors:
            out *= p**e
        return out

    def largest_prime(self):
        return self.factors[-1][0] if self.factors else 1


def build_table(limit: int) -> PrimeTable:
    if not isinstance(limit, (int, np.integer)) or limit < 1:
        raise InvalidArgument(f"sieve limit must be a positive integer, got {limit!r}")
    limit = int(limit)
    if limit > MAX_SIEVE_LIMIT:
        raise OutOfRange(f"sieve limit {limit} exceeds the supported maximum {MAX_SIEVE_LIMIT}")
    sieve = np.ones(limit + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    primes = np.flatnonzero(sieve).astype(np.int64)
    counts = np.cumsum(sieve, dtype=np.int64)
    for arr in (sieve, primes, counts):
        arr.setflags(write=False)
    return PrimeTable(limit=limit, is_prime=sieve, primes=primes, pi_cache=counts)


def pi(table: PrimeTable, n: int) -> int:
    """Number of primes <= n."""
    if n < 0:
        raise InvalidArgument(f"pi is defined for n >= 0, got {n}")
    if n > table.limit:
        raise OutOfRange(f"pi({n}) needs a sieve limit >= {n}, table has {table.limit}")
    return int(table.pi_cache[n])


def pi_floor(table: PrimeTable, num: int, den: int = 1) -> int:
    """pi(num / den), i.e. pi of the floor of the quotient."""
    return pi(table, num // den)


def nth_prime(table: PrimeTable, k: int) -> int:
    if k < 1:
        raise InvalidArgument(f"prime index must be >= 1, got {k}")
    if k > len(table.primes):
        raise OutOfRange(f"table up to {table.limit} holds only {len(table.primes)} primes, asked for p_{k}")
    return int(table.primes[k - 1])


def factorize(n: int, table: PrimeTable) -> Factorization:
    if n < 1:
        raise InvalidArgument(f"can only factorize positive integers, got {n}")
    n = int(n)
    rest = n
    factors = []
    for p in table.primes:
        p = int(p)
        if p * p > rest:
            break
        if rest % p == 0:
            e = 0
            while rest % p == 0:
                rest //= p
                e += 1
            factors.append((p, e))
    # the cofactor is a prime unless every sieved prime was tried, in which
    # case it exceeds the limit anyway
    if rest > 1:
        if rest > table.limit:
            raise IncompleteTable(f"{n} has a prime factor {rest} above the sieve limit {table.limit}")
        factors.append((rest, 1))
    return Factorization(n, tuple(factors))


def omega(n: int, table: PrimeTable) -> int:
    """Number of distinct prime divisors."""
    return len(factorize(n, table).factors)


def prime_power(n: int):
    """Return ``(p, e)`` with ``n == p**e`` for prime ``p``, or None."""
    if n < 2:
        return None
    p = 2
    while p * p <= n:
        if n % p == 0:
            break
        p += 1
    else:
        return n, 1
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return (p, e) if n == 1 else None


def is_prime_power(n: int) -> bool:
    return prime_power(n) is not None


def is_perfect_power(x: int, d: int) -> bool:
    """Whether ``x`` is the d-th power of a non-negative integer."""
    _, exact = gmpy2.iroot(gmpy2.mpz(x), d)
    return bool(exact)


def integer_root(x: int, d: int) -> int:
    root, _ = gmpy2.iroot(gmpy2.mpz(x), d)
    return int(root)

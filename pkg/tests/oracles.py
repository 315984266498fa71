"""Brute-force reference computations, independent of the library code paths."""

import itertools
from functools import lru_cache
from math import prod

import numpy as np
from sympy import integer_nthroot


def trial_division_primes(limit):
    return [n for n in range(2, limit + 1) if all(n % q for q in range(2, int(n**0.5) + 1))]


def trial_pi(n):
    return len(trial_division_primes(n))


def is_dth_power(x, d):
    return integer_nthroot(x, d)[1]


def has_power_product(numbers, d):
    """Some non-empty product of distinct members is a perfect d-th power."""
    nums = list(numbers)
    for k in range(1, len(nums) + 1):
        for combo in itertools.combinations(nums, k):
            if is_dth_power(prod(combo), d):
                return True
    return False


@lru_cache(maxsize=None)
def brute_rho(d, N):
    """Max power-free subset of [N] over all 2^N subsets.

    A mask is bad when its product is a d-th power; a set is admissible when
    no submask is bad, which a subset-sum (zeta) transform over masks
    propagates upward.
    """
    size = 1 << N
    bad = np.zeros(size, dtype=bool)
    for mask in range(1, size):
        p = 1
        for i in range(N):
            if mask >> i & 1:
                p *= i + 1
        bad[mask] = is_dth_power(p, d)
    contains_bad = bad.copy()
    idx = np.arange(size)
    for i in range(N):
        has = (idx >> i) & 1 == 1
        contains_bad[has] |= contains_bad[idx[has] ^ (1 << i)]
    pop = np.array([bin(m).count("1") for m in range(size)])
    return int(pop[~contains_bad].max())


def exhaustive_zero_sum(matrix, d):
    """True iff some non-empty subset of rows sums to 0 mod d (dense enumeration)."""
    m = np.asarray(matrix, dtype=np.int64)
    n = m.shape[0]
    if n == 0:
        return False
    masks = np.arange(1, 1 << n, dtype=np.int64)
    bits = (masks[:, None] >> np.arange(n)[None, :]) & 1
    sums = (bits @ m) % d
    return bool(np.any(np.all(sums == 0, axis=1))) if m.shape[1] else True


def dense_exponents(numbers, d, primes):
    rows = []
    for n in numbers:
        row = []
        for p in primes:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            row.append(e % d)
        rows.append(row)
    return np.array(rows, dtype=np.int64).reshape(len(rows), len(primes))


def gf2_rank(matrix):
    rows = [int("".join(str(int(x) % 2) for x in r) or "0", 2) for r in np.asarray(matrix)]
    rank = 0
    while rows:
        pivot = max(rows)
        if pivot == 0:
            break
        rows.remove(pivot)
        top = pivot.bit_length() - 1
        rows = [r ^ pivot if r >> top & 1 else r for r in rows]
        rank += 1
    return rank

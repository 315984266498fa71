import math

import pytest
from hypothesis import given, strategies as st
from sympy import integer_nthroot

from powerfree.errors import IncompleteTable, InvalidArgument, OutOfRange
from powerfree.primes import (
    build_table,
    factorize,
    integer_root,
    is_perfect_power,
    is_prime_power,
    nth_prime,
    omega,
    pi,
    prime_power,
)

from .oracles import trial_division_primes, trial_pi


def test_table_limit_one_has_no_primes():
    t = build_table(1)
    assert list(t.primes) == []
    assert pi(t, 1) == 0


def test_table_limit_ten():
    t = build_table(10)
    assert list(t.primes) == trial_division_primes(10) == [2, 3, 5, 7]
    assert pi(t, 10) == 4


@pytest.mark.parametrize("n", [40, 20, 13])
def test_pi_matches_trial_division_up_to_40(n):
    assert pi(build_table(40), n) == trial_pi(n)


def test_pi_values_used_by_the_remark():
    t = build_table(40)
    assert (pi(t, 40), pi(t, 20), pi(t, 13)) == (12, 8, 6)
    assert (pi(t, 0), pi(t, 14), pi(t, 7), pi(t, 15)) == (0, 6, 4, 6)
    assert [trial_pi(n) for n in (14, 7, 15)] == [6, 4, 6]


def test_bad_limits():
    with pytest.raises(InvalidArgument):
        build_table(0)
    with pytest.raises(OutOfRange):
        pi(build_table(10), 11)


def test_table_is_read_only():
    t = build_table(30)
    with pytest.raises(ValueError):
        t.primes[0] = 4


def test_table_invariants():
    t = build_table(2000)
    assert list(t.primes) == trial_division_primes(2000)
    assert t.pi_cache[1] == 0 and t.pi_cache[2] == 1
    steps = [int(t.pi_cache[n] - t.pi_cache[n - 1]) for n in range(1, 2001)]
    assert all(s == int(t.is_prime[n]) for s, n in zip(steps, range(1, 2001)))


@pytest.mark.parametrize(
    "n, expected",
    [(1, ()), (24, ((2, 3), (3, 1))), (97, ((97, 1),))],
)
def test_factorize_examples(n, expected):
    fac = factorize(n, build_table(100))
    assert fac.factors == expected
    assert fac.multiply() == n


def test_factorize_beyond_table():
    with pytest.raises(IncompleteTable):
        factorize(97, build_table(10))
    with pytest.raises(IncompleteTable):
        factorize(2 * 101, build_table(50))
    # composite cofactors are fine while every prime factor is in the table
    assert factorize(49, build_table(7)).factors == ((7, 2),)


def test_factorize_roundtrip_on_whole_table():
    t = build_table(3000)
    for n in range(1, 3001):
        fac = factorize(n, t)
        assert fac.multiply() == n
        ps = fac.primes()
        assert ps == sorted(set(ps))
        assert all(t.is_prime[p] for p in ps)
        assert (n == 1) == (not fac.factors)


@pytest.mark.parametrize("n, expected", [(1, 0), (12, 2), (30, 3)])
def test_omega_examples(n, expected):
    assert omega(n, build_table(50)) == expected


@given(st.integers(min_value=2, max_value=5000))
def test_omega_at_most_log2(n):
    t = build_table(5000)
    assert omega(n, t) <= math.log2(n)


@pytest.mark.parametrize("k, p", [(1, 2), (3, 5), (5, 11)])
def test_nth_prime(k, p):
    assert nth_prime(build_table(20), k) == p


def test_nth_prime_too_small():
    with pytest.raises(OutOfRange):
        nth_prime(build_table(10), 5)


@pytest.mark.parametrize("n", [2, 3, 4, 8, 9, 25, 27, 49, 64, 121, 128])
def test_prime_powers(n):
    assert is_prime_power(n)


@pytest.mark.parametrize("n", [1, 6, 10, 12, 36, 100])
def test_not_prime_powers(n):
    assert prime_power(n) is None


@given(st.integers(min_value=0, max_value=10**40), st.integers(min_value=1, max_value=9))
def test_perfect_power_agrees_with_sympy(x, d):
    root, exact = integer_nthroot(x, d)
    assert is_perfect_power(x, d) == exact
    assert integer_root(x, d) == root

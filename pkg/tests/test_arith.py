"""Divisor-sum arithmetic against brute-force cross-checks."""

import math
import random

import pytest

from zumkeller.arith import (
    crt_solve,
    divisors,
    factorize,
    is_prime,
    is_square,
    prime_at,
    primes_up_to,
    sigma,
    sigma_sieve,
    spf_sieve,
)
from zumkeller.errors import DomainError
from zumkeller.oracles import trial_divisors

PRIMES_BELOW_100 = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47,
    53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
]


def test_sigma_matches_trial_division_small():
    for n in range(1, 2001):
        assert sigma(n) == sum(trial_divisors(n)), n


def test_sigma_matches_trial_division_sampled():
    rng = random.Random(7)
    for _ in range(50):
        n = rng.randrange(10**6, 10**9)
        assert sigma(n) == sum(trial_divisors(n))


def test_sigma_headline_point():
    assert sigma(94185) == 209664


def test_divisors_sorted_and_paired():
    for n in (1, 2, 12, 360, 945, 94185):
        divs = divisors(n)
        assert divs == sorted(divs)
        assert divs[0] == 1 and divs[-1] == n
        for d in divs:
            assert n % d == 0
            assert n // d in divs


def test_factorize_roundtrip():
    rng = random.Random(11)
    samples = list(range(1, 500)) + [rng.randrange(10**6, 10**12) for _ in range(20)]
    for n in samples:
        fact = factorize(n)
        recomposed = 1
        for p, e in fact.factors:
            assert is_prime(p)
            assert e >= 1
            recomposed *= p**e
        assert recomposed == n


def test_factorize_one_has_no_factors():
    assert factorize(1).factors == ()


def test_sigma_sieve_agrees_with_sigma():
    tab = sigma_sieve(5000)
    for n in range(1, 5001):
        assert int(tab[n]) == sigma(n)


def test_spf_sieve_gives_smallest_prime_factor():
    spf = spf_sieve(1000)
    for n in range(2, 1001):
        p = int(spf[n])
        assert is_prime(p)
        assert n % p == 0
        for q in range(2, p):
            assert n % q != 0


def test_primes_up_to():
    assert list(primes_up_to(100)) == PRIMES_BELOW_100
    assert list(primes_up_to(1)) == []


def test_prime_at_indexing():
    assert prime_at(1) == 2
    assert prime_at(2) == 3
    assert prime_at(11) == 31
    assert prime_at(25) == 97


@pytest.mark.parametrize(
    "n,expected",
    [(0, True), (1, True), (2, False), (35, False), (36, True), (94185, False)],
)
def test_is_square(n, expected):
    assert is_square(n) is expected


def test_is_square_randomized():
    rng = random.Random(3)
    for _ in range(200):
        k = rng.randrange(1, 10**7)
        assert is_square(k * k)
        assert not is_square(k * k + 1)


def test_is_prime_matches_divisor_count():
    for n in range(1, 500):
        assert is_prime(n) == (len(divisors(n)) == 2)


def test_crt_solve_basic():
    assert crt_solve([(1, 3), (2, 5)]) == 7


def test_crt_solve_three_moduli():
    residues = [(2, 3), (3, 5), (2, 7)]
    n = crt_solve(residues)
    assert 0 <= n < 105
    for r, m in residues:
        assert n % m == r


def test_crt_solve_rejects_shared_factor():
    with pytest.raises(DomainError) as exc:
        crt_solve([(1, 6), (2, 15015)])
    assert "share factor 3" in str(exc.value)


def test_crt_solve_result_is_least_nonnegative():
    n = crt_solve([(5, 36), (0, 25)])
    assert 0 <= n < 36 * 25
    assert n % 36 == 5 and n % 25 == 0
    assert math.gcd(36, 25) == 1

"""Exact integer arithmetic: factorization, divisors, sigma, primes, CRT.

Everything here is exact.  Single values go through trial division (with a
cached smallest-prime-factor table for small inputs); bulk values go through
numpy sieves.  Nothing in this module is probabilistic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .errors import DomainError, ResourceLimitError

gcd = math.gcd

# Single-value factorizations consult a lazily built SPF table up to this
# limit and fall back to trial division above it.
_SPF_CACHE_LIMIT = 1 << 20
_SPF_CACHE: np.ndarray | None = None

# sigma_sieve allocates 8 bytes per entry; refuse anything past this.
DEFAULT_SIEVE_BUDGET = 50_000_000


@dataclass(frozen=True)
class Factorization:
    """Prime factorization ``n = prod(p**e)`` with ascending primes."""

    n: int
    factors: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class SigmaTable:
    """Divisor sums for every integer in ``[1, limit]``."""

    limit: int
    values: np.ndarray  # values[i] == sigma(i) for 1 <= i <= limit

    def __getitem__(self, i: int) -> int:
        if not 1 <= i <= self.limit:
            raise DomainError(f"sigma table covers [1, {self.limit}], got {i}")
        return int(self.values[i])


def spf_sieve(limit: int) -> np.ndarray:
    """Smallest-prime-factor table: spf[i] is the least prime dividing i."""
    if limit < 1:
        raise DomainError("sieve limit must be >= 1")
    spf = np.zeros(limit + 1, dtype=np.int64)
    for i in range(2, math.isqrt(limit) + 1):
        if spf[i] == 0:
            window = spf[i * i :: i]
            window[window == 0] = i
    rest = np.nonzero(spf[2:] == 0)[0] + 2
    spf[rest] = rest
    return spf


def _spf_cached(n: int) -> np.ndarray | None:
    global _SPF_CACHE
    if n > _SPF_CACHE_LIMIT:
        return None
    if _SPF_CACHE is None:
        _SPF_CACHE = spf_sieve(_SPF_CACHE_LIMIT)
    return _SPF_CACHE


def factorize(n: int) -> Factorization:
    """Exact prime factorization of a positive integer."""
    if n < 1:
        raise DomainError(f"factorize needs n >= 1, got {n}")
    if n == 1:
        return Factorization(1, ())
    spf = _spf_cached(n)
    factors: list[tuple[int, int]] = []
    if spf is not None:
        m = n
        while m > 1:
            p = int(spf[m])
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            factors.append((p, e))
        return Factorization(n, tuple(factors))
    # trial division, 2/3 then a 6k+-1 wheel
    m = n
    for p in (2, 3):
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            factors.append((p, e))
    p = 5
    while p * p <= m:
        for q in (p, p + 2):
            if m % q == 0:
                e = 0
                while m % q == 0:
                    m //= q
                    e += 1
                factors.append((q, e))
        p += 6
    if m > 1:
        factors.append((m, 1))
    return Factorization(n, tuple(factors))


def sigma_from_factors(factors: Sequence[tuple[int, int]]) -> int:
    total = 1
    for p, e in factors:
        total *= (p ** (e + 1) - 1) // (p - 1)
    return total


def sigma(n: int) -> int:
    """Sum of all positive divisors of n."""
    return sigma_from_factors(factorize(n).factors)


def divisors_from_factors(factors: Sequence[tuple[int, int]]) -> list[int]:
    divs = [1]
    for p, e in factors:
        divs = [d * p**k for k in range(e + 1) for d in divs]
    divs.sort()
    return divs


def divisors(n: int) -> list[int]:
    """All positive divisors of n in ascending order."""
    return divisors_from_factors(factorize(n).factors)


def sigma_sieve(limit: int, budget: int = DEFAULT_SIEVE_BUDGET) -> SigmaTable:
    """Tabulate sigma(i) for every 1 <= i <= limit."""
    if limit < 1:
        raise DomainError("sigma_sieve limit must be >= 1")
    if limit > budget:
        raise ResourceLimitError(
            f"sigma_sieve limit {limit} exceeds budget {budget}"
        )
    values = np.zeros(limit + 1, dtype=np.int64)
    for d in range(1, limit + 1):
        values[d::d] += d
    return SigmaTable(limit, values)


def is_prime(n: int) -> bool:
    """Exact deterministic primality test (trial division)."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0 or n % 3 == 0:
        return False
    p = 5
    while p * p <= n:
        if n % p == 0 or n % (p + 2) == 0:
            return False
        p += 6
    return True


def is_square(n: int) -> bool:
    if n < 0:
        return False
    r = math.isqrt(n)
    return r * r == n


def primes_up_to(limit: int) -> list[int]:
    """Ascending list of primes <= limit (classic boolean sieve)."""
    if limit < 2:
        return []
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for i in range(2, math.isqrt(limit) + 1):
        if flags[i]:
            flags[i * i :: i] = False
    return [int(p) for p in np.nonzero(flags)[0]]


_PRIME_LIST: list[int] = []


def _grow_primes(count: int) -> None:
    limit = 100
    while True:
        found = primes_up_to(limit)
        if len(found) >= count:
            _PRIME_LIST[:] = found
            return
        limit *= 4


def prime_at(k: int) -> int:
    """The k-th prime, 1-indexed: prime_at(1) == 2."""
    if k < 1:
        raise DomainError("prime index is 1-based")
    if k > len(_PRIME_LIST):
        _grow_primes(max(k, 2 * len(_PRIME_LIST) + 16))
    return _PRIME_LIST[k - 1]


def iter_primes() -> Iterator[int]:
    """2, 3, 5, 7, ... without end."""
    k = 1
    while True:
        yield prime_at(k)
        k += 1


def crt_solve(congruences: Sequence[tuple[int, int]]) -> int:
    """Least non-negative x with x = r (mod m) for every (r, m) given.

    Moduli must be pairwise coprime; the offending pair is named otherwise.
    """
    moduli = [m for _, m in congruences]
    for m in moduli:
        if m < 1:
            raise DomainError(f"modulus must be >= 1, got {m}")
    for i in range(len(moduli)):
        for j in range(i + 1, len(moduli)):
            g = gcd(moduli[i], moduli[j])
            if g != 1:
                raise DomainError(
                    f"moduli {moduli[i]} and {moduli[j]} share factor {g}"
                )
    x, m = 0, 1
    for r_i, m_i in congruences:
        if m_i == 1:
            continue
        inv = pow(m % m_i, -1, m_i)
        x += m * ((r_i - x) * inv % m_i)
        m *= m_i
    return x % m if m > 1 else 0

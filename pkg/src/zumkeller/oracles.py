"""Slow reference implementations, independent of the production code paths.

These exist so the fast deciders can be cross-validated over exhaustive
ranges.  Divisors come from plain trial division here on purpose; nothing
below shares code with the classifiers under test.
"""

from __future__ import annotations


def trial_divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def zumkeller_by_partition(n: int) -> bool:
    """Definition chase: does any divisor subset sum to sigma(n)/2?

    Depth-first over divisors in descending order with sum pruning; the
    failure case amounts to enumerating every split.
    """
    divs = trial_divisors(n)
    total = sum(divs)
    if total % 2 == 1:
        return False
    target = total // 2
    divs.sort(reverse=True)
    remaining = [0] * (len(divs) + 1)
    for i in range(len(divs) - 1, -1, -1):
        remaining[i] = remaining[i + 1] + divs[i]

    def search(i: int, need: int) -> bool:
        if need == 0:
            return True
        if i == len(divs) or remaining[i] < need:
            return False
        if divs[i] <= need and search(i + 1, need - divs[i]):
            return True
        return search(i + 1, need)

    return search(0, target)


def practical_by_reachability(n: int) -> bool:
    """Definition chase: every m <= n must be a subset sum of divisors."""
    reach = 1
    for d in trial_divisors(n):
        reach |= reach << d
    want = (1 << (n + 1)) - 2  # bits 1..n
    return reach & want == want

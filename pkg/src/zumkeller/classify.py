"""Membership deciders: Zumkeller, practical, plus certified shortcuts.

A positive integer is Zumkeller when its divisors split into two sets with
equal sums.  The decider reduces this to subset-sum reachability of
``t = sigma(n)/2 - n`` over the proper divisors, run on Python ints used as
bitsets.  A witness (the half of the partition containing n itself) can be
reconstructed on request.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .arith import divisors_from_factors, factorize, gcd, sigma_from_factors
from .errors import DomainError, PreconditionError, ResourceLimitError

# The subset-sum bitset refuses to grow beyond this many bits.
DEFAULT_BIT_LIMIT = 1 << 28


class RejectionReason(enum.Enum):
    SIGMA_ODD = "sigma_odd"
    SIGMA_LT_2N = "sigma_lt_2n"
    SUBSET_SUM_UNREACHABLE = "subset_sum_unreachable"


@dataclass(frozen=True)
class ZumkellerVerdict:
    n: int
    is_zumkeller: bool
    witness: tuple[int, ...] | None = None
    rejection_reason: RejectionReason | None = None

    def __bool__(self) -> bool:
        return self.is_zumkeller


def _reachable(divs_desc: list[int], t: int) -> bool:
    # Classic shift-or subset-sum, truncated to t+1 bits, largest divisor
    # first, early exit as soon as bit t appears.
    mask = (1 << (t + 1)) - 1
    bits = 1
    for d in divs_desc:
        if d > t:
            continue
        bits |= (bits << d) & mask
        if (bits >> t) & 1:
            return True
    return False


def _witness_subset(divs_desc: list[int], t: int) -> list[int] | None:
    # suffix[i] holds the sums reachable using divs_desc[i:]; building all
    # of them costs memory, which is why this path only runs on request.
    usable = [d for d in divs_desc if d <= t]
    mask = (1 << (t + 1)) - 1
    suffix = [0] * (len(usable) + 1)
    suffix[len(usable)] = 1
    for i in range(len(usable) - 1, -1, -1):
        b = suffix[i + 1]
        suffix[i] = b | ((b << usable[i]) & mask)
    if not (suffix[0] >> t) & 1:
        return None
    # Greedy, largest divisor first: take d whenever the remainder stays
    # reachable from the strictly smaller divisors.  Deterministic.
    chosen: list[int] = []
    need = t
    for i, d in enumerate(usable):
        if need == 0:
            break
        if d <= need and (suffix[i + 1] >> (need - d)) & 1:
            chosen.append(d)
            need -= d
    assert need == 0
    return chosen


def is_zumkeller(
    n: int,
    sigma_hint: int | None = None,
    witness: bool = False,
    bit_limit: int = DEFAULT_BIT_LIMIT,
) -> ZumkellerVerdict:
    """Decide whether n's divisors split into two equal-sum halves.

    Pipeline: sigma parity gate, abundance gate, perfect-number shortcut,
    then the subset-sum decision over proper divisors.  ``sigma_hint`` lets
    bulk callers supply a precomputed sigma(n); it is trusted as-is.
    Raises ResourceLimitError instead of answering when the bitset would
    exceed ``bit_limit`` bits.
    """
    if n < 1:
        raise DomainError(f"is_zumkeller needs n >= 1, got {n}")
    fac = None
    if sigma_hint is None:
        fac = factorize(n)
        s = sigma_from_factors(fac.factors)
    else:
        s = sigma_hint
    if s % 2 == 1:
        return ZumkellerVerdict(n, False, rejection_reason=RejectionReason.SIGMA_ODD)
    if s < 2 * n:
        return ZumkellerVerdict(n, False, rejection_reason=RejectionReason.SIGMA_LT_2N)
    if s == 2 * n:
        # Perfect: {n} versus all proper divisors.
        return ZumkellerVerdict(n, True, witness=(n,))
    t = s // 2 - n
    if t > bit_limit:
        raise ResourceLimitError(
            f"subset-sum target {t} for n={n} exceeds bit limit {bit_limit}"
        )
    if fac is None:
        fac = factorize(n)
    proper_desc = [d for d in reversed(divisors_from_factors(fac.factors)) if d != n]
    if witness:
        subset = _witness_subset(proper_desc, t)
        if subset is None:
            return ZumkellerVerdict(
                n, False, rejection_reason=RejectionReason.SUBSET_SUM_UNREACHABLE
            )
        return ZumkellerVerdict(n, True, witness=tuple([n] + subset))
    if _reachable(proper_desc, t):
        return ZumkellerVerdict(n, True)
    return ZumkellerVerdict(
        n, False, rejection_reason=RejectionReason.SUBSET_SUM_UNREACHABLE
    )


# --- congruence fast path ---------------------------------------------------

@dataclass(frozen=True)
class CongruenceRule:
    modulus: int
    residue: int


def _rule_family(modulus: int, residues: range) -> tuple[CongruenceRule, ...]:
    return tuple(CongruenceRule(modulus, r) for r in residues)


# Sound (never wrong, not complete) residue classes that consist entirely of
# Zumkeller numbers.  Family shape: modulus 2^a * p^2, residues 2^a * p * j
# for j = 1 .. p-1, with p <= 2^(a+1) - 1.
CONGRUENCE_RULES: tuple[CongruenceRule, ...] = (
    _rule_family(18, range(6, 18, 6))
    + _rule_family(100, range(20, 100, 20))
    + _rule_family(196, range(28, 196, 28))
    + _rule_family(968, range(88, 968, 88))
    + _rule_family(1352, range(104, 1352, 104))
)

assert len(CONGRUENCE_RULES) == 34

# (modulus, odd prime p, power a) for each rule family.
_RULE_FAMILIES = {18: (3, 1), 100: (5, 2), 196: (7, 2), 968: (11, 3), 1352: (13, 3)}


def congruence_fast_path(n: int) -> bool:
    """True only if n matches one of the certified residue classes."""
    if n < 1:
        raise DomainError(f"congruence_fast_path needs n >= 1, got {n}")
    for modulus, base in (
        (18, 6),
        (100, 20),
        (196, 28),
        (968, 88),
        (1352, 104),
    ):
        r = n % modulus
        if r != 0 and r % base == 0:
            return True
    return False


@dataclass(frozen=True)
class RuleCertification:
    rule: CongruenceRule
    algebraic_ok: bool
    empirical_ok: bool
    detail: str

    @property
    def ok(self) -> bool:
        return self.algebraic_ok and self.empirical_ok


@dataclass(frozen=True)
class CertificationReport:
    rules: tuple[RuleCertification, ...]

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.rules)


def _certify_rule_algebra(rule: CongruenceRule, depth: int = 10) -> tuple[bool, str]:
    """Check the structural facts that make a rule sound for *every* member.

    Any member N of the class satisfies v2(N) >= a and p || N, so
    N = 2^v * p * m with m odd and coprime to p.  Since p <= 2^(a+1) - 1
    <= 2^(v+1) - 1, the factor 2^v * p is itself Zumkeller, and N is a
    coprime multiple of it.
    """
    p, a = _RULE_FAMILIES[rule.modulus]
    base = 2**a * p
    if rule.modulus != 2**a * p * p:
        return False, "modulus shape"
    if rule.residue % base != 0:
        return False, "residue not a multiple of 2^a*p"
    j = rule.residue // base
    if not 1 <= j <= p - 1:
        return False, "residue multiplier out of range"
    if p > 2 ** (a + 1) - 1:
        return False, f"prime {p} too large for power {a}"
    # 2^v * p stays Zumkeller for every v >= a; spot the first few by DP.
    for v in range(a, a + depth):
        if not is_zumkeller(2**v * p):
            return False, f"2^{v}*{p} not Zumkeller"
    return True, f"members are coprime multiples of 2^v*{p}, v >= {a}"


def certify_congruence_rules(members_per_rule: int = 200) -> CertificationReport:
    """Certify every fast-path rule algebraically and empirically."""
    results = []
    for rule in CONGRUENCE_RULES:
        alg_ok, detail = _certify_rule_algebra(rule)
        emp_ok = True
        p, a = _RULE_FAMILIES[rule.modulus]
        for k in range(members_per_rule):
            member = rule.modulus * k + rule.residue
            # structural claims, then the full decider
            v = (member & -member).bit_length() - 1
            odd = member >> v
            if v < a or odd % p != 0:
                alg_ok, detail = False, f"member {member} breaks 2-adic shape"
                break
            if odd % (p * p) == 0:
                alg_ok, detail = False, f"member {member} divisible by {p}^2"
                break
            if not is_zumkeller(member):
                emp_ok = False
                detail = f"member {member} failed the subset-sum decider"
                break
        results.append(RuleCertification(rule, alg_ok, emp_ok, detail))
    return CertificationReport(tuple(results))


# --- practical numbers ------------------------------------------------------

def is_practical(n: int) -> bool:
    """Every m <= n is a sum of distinct divisors of n.

    Decided by the sorted-divisor prefix criterion: with divisors
    d1 < d2 < ..., each d_{i+1} must not exceed 1 + (d1 + ... + di).
    """
    if n < 1:
        raise DomainError(f"is_practical needs n >= 1, got {n}")
    if n == 1:
        return True
    if n % 2 == 1:
        return False
    reach = 0
    for d in divisors_from_factors(factorize(n).factors):
        if d > reach + 1:
            return False
        reach += d
    return True


# --- certified products -----------------------------------------------------

def coprime_multiple_certify(n: int, w: int) -> bool:
    """Certify n*w Zumkeller from n Zumkeller and gcd(n, w) = 1.

    No subset-sum runs on n*w; the preconditions themselves are verified
    and a PreconditionError is raised when either fails.
    """
    if n < 1 or w < 1:
        raise DomainError("coprime_multiple_certify needs positive integers")
    g = gcd(n, w)
    if g != 1:
        raise PreconditionError(f"gcd({n}, {w}) = {g}, not coprime")
    if not is_zumkeller(n):
        raise PreconditionError(f"{n} is not Zumkeller")
    return True


def abundancy(n: int) -> Fraction:
    """sigma(n)/n as an exact fraction."""
    if n < 1:
        raise DomainError(f"abundancy needs n >= 1, got {n}")
    return Fraction(sigma_from_factors(factorize(n).factors), n)

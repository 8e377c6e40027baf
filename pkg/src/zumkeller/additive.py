"""Range classification and sums-of-two scans.

Builds flag tables (Zumkeller / practical / prime / square) over [1, limit]
and classifies every n as a sum of two members of a chosen pair of
categories.  Scan orders are fixed, so results are deterministic and
independent of the number of worker processes.
"""

from __future__ import annotations

import bisect
import enum
import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from multiprocessing import get_context

import numpy as np

from . import store
from .arith import sigma_sieve, spf_sieve
from .classify import congruence_fast_path, is_practical, is_zumkeller
from .errors import DomainError

DEFAULT_PAIR_LIMIT = 94185

# Non-representable window whose odd members get counted in aggregates.
ODD_WINDOW = (953, 32761)


class PairType(enum.Enum):
    ZUM_ZUM = "zz"
    ZUM_PRACTICAL = "zs"
    ZUM_SQUARE = "zq"
    ZUM_PRIME = "zp"

    @property
    def second_category(self) -> str:
        return {
            PairType.ZUM_ZUM: "zumkeller",
            PairType.ZUM_PRACTICAL: "practical",
            PairType.ZUM_SQUARE: "square",
            PairType.ZUM_PRIME: "prime",
        }[self]


@dataclass
class RangeTable:
    """Boolean flag arrays over [1, limit]; index 0 is unused."""

    limit: int
    zumkeller: np.ndarray
    practical: np.ndarray
    prime: np.ndarray
    square: np.ndarray

    def flags(self, kind: str) -> np.ndarray:
        try:
            return getattr(self, kind)
        except AttributeError:
            raise DomainError(f"unknown flag kind {kind!r}") from None

    @cached_property
    def zumkeller_list(self) -> list[int]:
        return [int(i) for i in np.nonzero(self.zumkeller)[0]]

    @cached_property
    def practical_list(self) -> list[int]:
        return [int(i) for i in np.nonzero(self.practical)[0]]

    @cached_property
    def prime_list(self) -> list[int]:
        return [int(i) for i in np.nonzero(self.prime)[0]]

    @cached_property
    def square_list(self) -> list[int]:
        return [int(i) for i in np.nonzero(self.square)[0]]

    def category_list(self, pair_type: PairType) -> list[int]:
        return {
            PairType.ZUM_ZUM: self.zumkeller_list,
            PairType.ZUM_PRACTICAL: self.practical_list,
            PairType.ZUM_SQUARE: self.square_list,
            PairType.ZUM_PRIME: self.prime_list,
        }[pair_type]


_WORKER_SIGMA: np.ndarray | None = None


def _zum_worker(chunk: np.ndarray) -> list[int]:
    sig = _WORKER_SIGMA
    out = []
    for n in chunk:
        n = int(n)
        if is_zumkeller(n, sigma_hint=int(sig[n])):
            out.append(n)
    return out


def _fast_path_vector(limit: int) -> np.ndarray:
    idx = np.arange(limit + 1, dtype=np.int64)
    mask = np.zeros(limit + 1, dtype=bool)
    for modulus, base in ((18, 6), (100, 20), (196, 28), (968, 88), (1352, 104)):
        r = idx % modulus
        mask |= (r != 0) & (r % base == 0)
    mask[0] = False
    return mask


def build_range_table(limit: int, jobs: int = 1, spot_checks: int = 1000) -> RangeTable:
    """Classify every n in [1, limit].

    Zumkeller flags come from the sigma gates, the congruence fast path and
    the subset-sum decider; a random sample of the result is re-validated
    against the standalone decider before the table is returned.
    """
    if limit < 1:
        raise DomainError("range table limit must be >= 1")
    sig = sigma_sieve(limit).values
    spf = spf_sieve(limit)
    idx = np.arange(limit + 1, dtype=np.int64)

    prime = spf == idx
    prime[:2] = False

    square = np.zeros(limit + 1, dtype=bool)
    square[np.arange(1, math.isqrt(limit) + 1, dtype=np.int64) ** 2] = True

    practical = np.zeros(limit + 1, dtype=bool)
    practical[1] = True
    for n in range(2, limit + 1, 2):
        practical[n] = is_practical(n)

    zum = (sig == 2 * idx) & (idx >= 2)  # perfect numbers
    zum |= _fast_path_vector(limit)
    candidates = np.nonzero((sig % 2 == 0) & (sig > 2 * idx) & ~zum & (idx >= 1))[0]

    global _WORKER_SIGMA
    if jobs > 1 and len(candidates) > 0:
        _WORKER_SIGMA = sig
        try:
            chunks = np.array_split(candidates, jobs * 4)
            with ProcessPoolExecutor(
                max_workers=jobs, mp_context=get_context("fork")
            ) as pool:
                for accepted in pool.map(_zum_worker, chunks):
                    for n in accepted:
                        zum[n] = True
        finally:
            _WORKER_SIGMA = None
    else:
        for n in candidates:
            n = int(n)
            if is_zumkeller(n, sigma_hint=int(sig[n])):
                zum[n] = True

    table = RangeTable(limit, zum, practical, prime, square)
    rng = random.Random(0x5EED ^ limit)
    for _ in range(min(spot_checks, limit)):
        i = rng.randint(1, limit)
        if bool(zum[i]) != is_zumkeller(i).is_zumkeller:
            raise RuntimeError(f"flag table disagrees with decider at {i}")
    return table


# --- pair-sum scans ----------------------------------------------------------

def find_pair_witness(
    table: RangeTable, pair_type: PairType, n: int, reverse: bool = False
) -> tuple[int, int] | None:
    """First witness (a, b) with a + b = n, a Zumkeller, b in the pair's
    second category.  The default order enumerates the second category
    ascending; ``reverse=True`` uses an independent order for
    cross-validation."""
    if not 1 <= n <= table.limit:
        raise DomainError(f"n={n} outside table range [1, {table.limit}]")
    zum = table.zumkeller
    if pair_type is PairType.ZUM_ZUM:
        zlist = table.zumkeller_list
        if not reverse:
            hi = bisect.bisect_right(zlist, n // 2)
            for i in range(hi):
                a = zlist[i]
                if zum[n - a]:
                    return a, n - a
        else:
            lo = bisect.bisect_left(zlist, (n + 1) // 2)
            hi = bisect.bisect_right(zlist, n - 6)
            for i in range(lo, hi):
                b = zlist[i]
                if zum[n - b]:
                    return n - b, b
        return None
    second = table.category_list(pair_type)
    other = table.flags(pair_type.second_category)
    if not reverse:
        hi = bisect.bisect_right(second, n - 6)
        for i in range(hi):
            b = second[i]
            if zum[n - b]:
                return n - b, b
    else:
        zlist = table.zumkeller_list
        hi = bisect.bisect_right(zlist, n - 1)
        for i in range(hi):
            a = zlist[i]
            if other[n - a]:
                return a, n - a
    return None


@dataclass(frozen=True)
class RepresentationReport:
    n: int
    pair_type: PairType
    representable: bool
    witness: tuple[int, int] | None


def classify_pair_sums(
    table: RangeTable, pair_type: PairType, limit: int | None = None
) -> list[RepresentationReport]:
    """Representation reports for every n in [1, limit]."""
    limit = table.limit if limit is None else limit
    if limit > table.limit:
        raise DomainError(f"limit {limit} exceeds table range {table.limit}")
    out = []
    for n in range(1, limit + 1):
        w = find_pair_witness(table, pair_type, n)
        out.append(RepresentationReport(n, pair_type, w is not None, w))
    return out


def _non_representable_range(
    table: RangeTable, pair_type: PairType, lo: int, hi: int
) -> list[int]:
    out = []
    for n in range(lo, hi):
        if find_pair_witness(table, pair_type, n) is None:
            # cross-validate with the independent scan order
            if find_pair_witness(table, pair_type, n, reverse=True) is not None:
                raise RuntimeError(f"scan orders disagree at n={n}")
            out.append(n)
    return out


def non_representable_list(
    table: RangeTable, pair_type: PairType, limit: int | None = None
) -> list[int]:
    """Ascending list of n with no representation; every verdict is
    confirmed by a second, independent scan order."""
    limit = table.limit if limit is None else limit
    if limit > table.limit:
        raise DomainError(f"limit {limit} exceeds table range {table.limit}")
    return _non_representable_range(table, pair_type, 1, limit + 1)


def aggregates_from_non_representables(values: list[int], limit: int) -> dict:
    lo, hi = ODD_WINDOW
    hi = min(hi, limit)
    odd_window = sum(1 for v in values if v % 2 == 1 and lo <= v <= hi)
    return {
        "count": len(values),
        "max": max(values) if values else None,
        "odd_window_count": odd_window,
    }


def run_pair_scan(
    table: RangeTable,
    pair_type: PairType,
    manifest: "store.RunManifest | None" = None,
    manifest_path=None,
    stop_after: int | None = None,
) -> tuple[list[int], dict]:
    """Full scan, optionally checkpointed chunk by chunk in a manifest.

    A scan resumed from a partial manifest returns the same list and
    aggregates as a single-shot run.  ``stop_after`` limits how many new
    chunks get processed (used to exercise resuming).
    """
    if manifest is None:
        values = non_representable_list(table, pair_type)
        return values, aggregates_from_non_representables(values, table.limit)
    if manifest.limit != table.limit or manifest.pair_type != pair_type.value:
        raise DomainError("manifest does not match this table/pair")
    chunk = manifest.chunk_size
    n_chunks = (table.limit + chunk - 1) // chunk
    done = 0
    for ci in range(n_chunks):
        if ci in manifest.completed:
            continue
        if stop_after is not None and done >= stop_after:
            break
        lo = ci * chunk + 1
        hi = min((ci + 1) * chunk, table.limit) + 1
        manifest.completed[ci] = _non_representable_range(table, pair_type, lo, hi)
        done += 1
        if manifest_path is not None:
            store.save_manifest(manifest, manifest_path)
    if len(manifest.completed) < n_chunks:
        return [], {"complete": False, "chunks_done": len(manifest.completed)}
    values = [v for ci in sorted(manifest.completed) for v in manifest.completed[ci]]
    aggregates = aggregates_from_non_representables(values, table.limit)
    manifest.aggregates = aggregates
    if manifest_path is not None:
        store.save_manifest(manifest, manifest_path)
    return values, aggregates


# --- verification reports ----------------------------------------------------

# Explicit two-Zumkeller decompositions for the even numbers 12..88 outside
# the exception set.
EVEN_DECOMPOSITIONS: dict[int, tuple[int, int]] = {
    12: (6, 6), 18: (12, 6), 24: (12, 12), 26: (20, 6), 30: (24, 6),
    32: (20, 12), 34: (28, 6), 36: (30, 6), 40: (28, 12), 42: (30, 12),
    44: (24, 20), 46: (40, 6), 48: (42, 6), 50: (30, 20), 52: (40, 12),
    54: (48, 6), 56: (28, 28), 58: (30, 28), 60: (54, 6), 62: (56, 6),
    64: (40, 24), 66: (60, 6), 68: (56, 12), 70: (42, 28), 72: (66, 6),
    74: (54, 20), 76: (70, 6), 78: (66, 12), 80: (60, 20), 82: (70, 12),
    84: (78, 6), 86: (80, 6), 88: (60, 28),
}

EVEN_EXCEPTIONS = frozenset({14, 16, 20, 22, 28, 38})

# 18k + r = 18(k - shift) + base + addend, valid for k >= 5; the first part
# lands in a residue class 6 or 12 mod 18 and the addend is a fixed small
# Zumkeller number.
EIGHTEEN_K_IDENTITIES: tuple[tuple[int, int, int, int], ...] = (
    (0, 1, 6, 12), (2, 5, 12, 80), (4, 2, 12, 28), (6, 1, 12, 12),
    (8, 1, 6, 20), (10, 2, 6, 40), (12, 0, 6, 6), (14, 1, 12, 20),
    (16, 2, 12, 40),
)


@dataclass
class EvenCharReport:
    limit: int
    mismatches: list[int] = field(default_factory=list)
    bad_decompositions: list[int] = field(default_factory=list)
    bad_identities: list[tuple[int, int]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.mismatches or self.bad_decompositions or self.bad_identities)


def verify_even_characterization(table: RangeTable) -> EvenCharReport:
    """Even n is a sum of two Zumkeller numbers iff n >= 12 and n is not in
    the six-element exception set; checked exhaustively, then the explicit
    decomposition table and the nine 18k+r identities are re-validated."""
    report = EvenCharReport(table.limit)
    zum = table.zumkeller
    for n in range(2, table.limit + 1, 2):
        expected = n >= 12 and n not in EVEN_EXCEPTIONS
        actual = find_pair_witness(table, PairType.ZUM_ZUM, n) is not None
        if expected != actual:
            report.mismatches.append(n)
    for n, (a, b) in EVEN_DECOMPOSITIONS.items():
        if a + b != n or not (zum[a] and zum[b]):
            report.bad_decompositions.append(n)
    for r, shift, base, addend in EIGHTEEN_K_IDENTITIES:
        k = 5
        while 18 * k + r <= table.limit:
            part = 18 * (k - shift) + base
            if part + addend != 18 * k + r or not (zum[part] and zum[addend]):
                report.bad_identities.append((k, r))
            k += 1
    return report


PRACTICAL_RESIDUES = frozenset({7, 13})
SQUARE_RESIDUES = frozenset({1, 3, 4, 6, 7, 10, 12, 13, 15, 16})
PRIME_RESIDUES = frozenset({1, 5, 7, 8, 9, 11, 13, 14, 15, 17})
SQUARE_EXCEPTIONS = (1, 3, 4, 6, 12, 19, 30)


@dataclass
class ResidueClassReport:
    pair_type: PairType
    limit: int
    class_mismatches: list[int]
    class_non_representables: list[int]
    census: list[int]
    least_universal_bound: int | None

    @property
    def ok(self) -> bool:
        return not self.class_mismatches


def _residue_report(
    table: RangeTable,
    pair_type: PairType,
    limit: int | None,
    in_class,
    expected_representable,
) -> ResidueClassReport:
    limit = min(table.limit, 10_000) if limit is None else limit
    if limit > table.limit:
        raise DomainError(f"limit {limit} exceeds table range {table.limit}")
    mismatches, class_nonrep, census = [], [], []
    for n in range(1, limit + 1):
        rep = find_pair_witness(table, pair_type, n) is not None
        if not rep:
            census.append(n)
        if in_class(n):
            if not rep:
                class_nonrep.append(n)
            if rep != expected_representable(n):
                mismatches.append(n)
    bound = census[-1] + 1 if census else 1
    return ResidueClassReport(pair_type, limit, mismatches, class_nonrep, census, bound)


def verify_zum_practical(table: RangeTable, limit: int | None = None) -> ResidueClassReport:
    """Every even n and every n = 7, 13 (mod 18) is Zumkeller + practical
    exactly when n >= 7 (checked up to the limit); the census and the least
    bound after which everything in range is representable come along."""
    return _residue_report(
        table,
        PairType.ZUM_PRACTICAL,
        limit,
        lambda n: n % 2 == 0 or n % 18 in PRACTICAL_RESIDUES,
        lambda n: n >= 7,
    )


def verify_zum_square(table: RangeTable, limit: int | None = None) -> ResidueClassReport:
    """Within the ten residue classes mod 18 that admit Zumkeller + square
    sums, the non-representables are exactly 1, 3, 4, 6, 12, 19, 30."""
    report = _residue_report(
        table,
        PairType.ZUM_SQUARE,
        limit,
        lambda n: n % 18 in SQUARE_RESIDUES,
        lambda n: n not in SQUARE_EXCEPTIONS,
    )
    return report


def verify_zum_prime(table: RangeTable, limit: int | None = None) -> ResidueClassReport:
    """Within the ten residue classes mod 18 that admit Zumkeller + prime
    sums, representable exactly when n >= 8."""
    return _residue_report(
        table,
        PairType.ZUM_PRIME,
        limit,
        lambda n: n % 18 in PRIME_RESIDUES,
        lambda n: n >= 8,
    )


@dataclass
class Conjecture18k3Report:
    k_max: int
    k1_representable: bool
    counterexamples: list[int]
    witnesses: dict[int, tuple[int, int]]

    @property
    def ok(self) -> bool:
        return not self.counterexamples


def scan_conjecture_18k3(table: RangeTable, k_max: int) -> Conjecture18k3Report:
    """Zumkeller + prime witnesses for n = 18k + 3, k = 1..k_max.

    k = 1 (n = 21) is expected to be non-representable and is reported via
    its own flag; any k >= 2 without a witness is a counterexample.
    """
    if k_max < 2:
        raise DomainError("scan needs k_max >= 2")
    if 18 * k_max + 3 > table.limit:
        raise DomainError(f"table limit {table.limit} too low for k_max {k_max}")
    witnesses: dict[int, tuple[int, int]] = {}
    counterexamples = []
    k1 = find_pair_witness(table, PairType.ZUM_PRIME, 21) is not None
    for k in range(2, k_max + 1):
        w = find_pair_witness(table, PairType.ZUM_PRIME, 18 * k + 3)
        if w is None:
            counterexamples.append(k)
        else:
            witnesses[k] = w
    return Conjecture18k3Report(k_max, k1, counterexamples, witnesses)


def density_counts(
    table: RangeTable, pair_type: PairType, x_points: list[int]
) -> list[tuple[int, int]]:
    """(x, number of non-representable n <= x) for each requested x."""
    if not x_points:
        return []
    top = max(x_points)
    if top > table.limit:
        raise DomainError(f"x point {top} exceeds table range {table.limit}")
    values = non_representable_list(table, pair_type, top)
    return [(x, bisect.bisect_right(values, x)) for x in sorted(x_points)]

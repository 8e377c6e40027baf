"""End-to-end verification checklist for the package's headline results.

Each check returns a CheckResult and never raises for a plain wrong answer;
checks that need more range than the caller allowed report "skip", and
checks that blow the configured bit budget report "resource".  The same
functions back both the acceptance test suite and ``zumkeller verify-paper``.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from math import gcd

from . import additive, structure
from .additive import PairType
from .classify import congruence_fast_path, is_practical, is_zumkeller
from .errors import ResourceLimitError
from .oracles import practical_by_reachability, zumkeller_by_partition

HEADLINE_LIMIT = 94185
RNG_SEED = 20260825


@dataclass
class CheckResult:
    name: str
    status: str  # pass / fail / skip / resource
    detail: str

    @property
    def ok(self) -> bool:
        return self.status == "pass"


def _result(name: str, ok: bool, detail: str) -> CheckResult:
    return CheckResult(name, "pass" if ok else "fail", detail)


def check_two_zumkeller_headline(table, build_seconds: float | None = None) -> CheckResult:
    name = "zum+zum non-representables at 94185"
    if table is None or table.limit < HEADLINE_LIMIT:
        return CheckResult(name, "skip", "skipped (limit too low)")
    t0 = time.perf_counter()
    values = additive.non_representable_list(table, PairType.ZUM_ZUM)
    elapsed = time.perf_counter() - t0
    agg = additive.aggregates_from_non_representables(values, table.limit)
    total = elapsed + (build_seconds or 0.0)
    ok = agg["max"] == 32761 and agg["odd_window_count"] == 1055
    if build_seconds is not None:
        ok = ok and total < 300.0
    return _result(
        name,
        ok,
        f"max={agg['max']}, odd in [953,32761]={agg['odd_window_count']}, "
        f"scan {elapsed:.1f}s" + (f", with build {total:.1f}s" if build_seconds else ""),
    )


def check_even_characterization(table) -> CheckResult:
    name = "even n = sum of two Zumkeller iff n >= 12, six exceptions"
    if table is None or table.limit < HEADLINE_LIMIT:
        return CheckResult(name, "skip", "skipped (limit too low)")
    rep = additive.verify_even_characterization(table)
    ok = not rep.mismatches and not rep.bad_identities
    return _result(
        name,
        ok,
        f"mismatches={rep.mismatches[:5]}, identity failures={rep.bad_identities[:5]}",
    )


def check_explicit_decompositions(table) -> CheckResult:
    name = "33 explicit even decompositions"
    if table is None or table.limit < 90:
        return CheckResult(name, "skip", "skipped (limit too low)")
    zum = table.zumkeller
    bad = [
        n
        for n, (a, b) in additive.EVEN_DECOMPOSITIONS.items()
        if a + b != n or not (zum[a] and zum[b])
    ]
    return _result(name, len(additive.EVEN_DECOMPOSITIONS) == 33 and not bad, f"bad={bad}")


def check_small_zumkeller_facts(table) -> CheckResult:
    name = "Zumkeller set below 18 and smallest odd member"
    if table is None or table.limit < 945:
        return CheckResult(name, "skip", "skipped (limit too low)")
    below18 = [n for n in table.zumkeller_list if n < 18]
    first_odd = next((n for n in table.zumkeller_list if n % 2), None)
    ok = below18 == [6, 12] and first_odd == 945
    return _result(name, ok, f"below 18: {below18}, first odd: {first_odd}")


def check_oracle_agreement() -> CheckResult:
    name = "decider vs definitional oracles"
    t0 = time.perf_counter()
    zum_bad = [
        n for n in range(1, 2001)
        if is_zumkeller(n).is_zumkeller != zumkeller_by_partition(n)
    ]
    prac_bad = [
        n for n in range(1, 5001)
        if is_practical(n) != practical_by_reachability(n)
    ]
    elapsed = time.perf_counter() - t0
    ok = not zum_bad and not prac_bad and elapsed < 120.0
    return _result(
        name,
        ok,
        f"zumkeller mismatches={zum_bad[:5]}, practical mismatches={prac_bad[:5]}, "
        f"{elapsed:.1f}s",
    )


def check_fast_path_soundness() -> CheckResult:
    name = "congruence fast path sound to 1e5"
    bad = [
        n for n in range(1, 100_001)
        if congruence_fast_path(n) and not is_zumkeller(n)
    ]
    hits = sum(1 for n in range(1, 100_001) if congruence_fast_path(n))
    return _result(name, not bad, f"{hits} members matched, failures={bad[:5]}")


def check_table_rows() -> CheckResult:
    name = "44-row odd pair table"
    rep = structure.verify_table1()
    return _result(
        name, rep.ok, f"{rep.rows_checked} rows, failures={rep.failures[:3]}"
    )


def check_zum_square(table) -> CheckResult:
    name = "zum+square residue classes to 1e4"
    if table is None or table.limit < 10_000:
        return CheckResult(name, "skip", "skipped (limit too low)")
    rep = additive.verify_zum_square(table, 10_000)
    expected = list(additive.SQUARE_EXCEPTIONS)
    ok = rep.ok and rep.class_non_representables == expected
    return _result(
        name, ok, f"class non-representables: {rep.class_non_representables}"
    )


def check_zum_prime(table) -> CheckResult:
    name = "zum+prime residue classes and 18k+3 scan"
    if table is None or table.limit < 18_003:
        return CheckResult(name, "skip", "skipped (limit too low)")
    rep = additive.verify_zum_prime(table, 10_000)
    scan = additive.scan_conjecture_18k3(table, 1000)
    ok = rep.ok and scan.ok and not scan.k1_representable
    return _result(
        name,
        ok,
        f"mismatches={rep.class_mismatches[:5]}, 18k+3 counterexamples="
        f"{scan.counterexamples[:5]}, n=21 non-representable="
        f"{not scan.k1_representable}",
    )


def check_zum_practical(table) -> CheckResult:
    name = "zum+practical residue classes to 1e4"
    if table is None or table.limit < 10_000:
        return CheckResult(name, "skip", "skipped (limit too low)")
    rep = additive.verify_zum_practical(table, 10_000)
    return _result(name, rep.ok, f"mismatches={rep.class_mismatches[:5]}")


def check_blocks_and_abundancy() -> CheckResult:
    name = "prime blocks and minimal abundancy"
    b1 = structure.compute_f_and_A(1)
    b2 = structure.compute_f_and_A(2)
    v1 = structure.zumkeller_check_block(b1)
    v2 = structure.zumkeller_check_block(b2)
    res = structure.compute_A_lambda(2, 1, 10_000)
    ok = (
        (b1.f_k, b1.a_k, v1) == (2, 6, True)
        and (b2.f_k, b2.a_k, v2) == (6, 15015, True)
        and res is not None
        and (res.n, res.block_divisor, res.lemma_ok) == (945, 105, True)
    )
    detail = (
        f"f(1)={b1.f_k}, A1={b1.a_k} ({v1}); f(2)={b2.f_k}, A2={b2.a_k} ({v2}); "
        f"A_2(1)={res.n if res else None}, divisor {res.block_divisor if res else '-'}"
    )
    return _result(name, ok, detail)


def check_consecutive_witness() -> CheckResult:
    name = "consecutive-run witness construction"
    b1 = structure.compute_f_and_A(1)
    b2 = structure.compute_f_and_A(2)
    b3 = structure.compute_f_and_A(3)
    for b in (b1, b2, b3):
        structure.zumkeller_check_block(b)
    # A1 and A2 overlap in the prime 3, so no n can have both n+1 = 6u and
    # n+2 = 15015v: consecutive integers cannot both be multiples of 3.
    # The constructor must refuse that pair; the first legal partner for
    # A1 is A3 (index 3 > f(1) = 2).
    try:
        structure.construct_consecutive_witness([b1, b2])
        return _result(name, False, "overlapping blocks were not rejected")
    except Exception as exc:  # expect DomainError naming the shared factor
        refused = "share factor 3" in str(exc)
    w2 = structure.construct_consecutive_witness([b1, b3])
    w1 = structure.construct_consecutive_witness([b1])
    dp = is_zumkeller(w1.n + 1, witness=True)
    ok = (
        refused
        and w1.n == 5
        and dp.is_zumkeller
        and (w2.n + 1) % 6 == 0
        and (w2.n + 2) % b3.a_k == 0
    )
    return _result(
        name,
        ok,
        f"(A1,A2) refused={refused}; (A1,A3) gives n={w2.n}; m=1 gives n={w1.n}, "
        f"DP confirms {w1.n + 1}",
    )


def check_sampled_properties(table) -> CheckResult:
    name = "sampled certificates and decompositions"
    if table is None or table.limit < 10_000:
        return CheckResult(name, "skip", "skipped (limit too low)")
    rng = random.Random(RNG_SEED)
    pool = [n for n in table.zumkeller_list if n <= 100_000]
    coprime_bad = []
    for _ in range(500):
        n = rng.choice(pool)
        w = rng.randint(1, 1_000_000 // n)
        while gcd(n, w) != 1:
            w = rng.randint(1, 1_000_000 // n)
        if not is_zumkeller(n * w):
            coprime_bad.append((n, w))
    square_bad = [k for k in range(1, 101) if is_zumkeller(k * k)]
    odd_bad = []
    for _ in range(200):
        n = rng.randrange(47093, 500_000) * 2 + 1
        dec = structure.decompose_odd(n)
        a, b = dec.parts
        if a + b != n or not is_zumkeller(a) or not is_zumkeller(b):
            odd_bad.append(n)
    ok = not coprime_bad and not square_bad and not odd_bad
    return _result(
        name,
        ok,
        f"500 coprime multiples ok={not coprime_bad}, squares never={not square_bad}, "
        f"200 odd decompositions ok={not odd_bad}",
    )


def check_deterministic_csv(limit: int, tmp_dir) -> CheckResult:
    name = "byte-identical CSV across runs and job counts"
    if limit < HEADLINE_LIMIT:
        return CheckResult(name, "skip", "skipped (limit too low)")
    import contextlib
    import io
    from pathlib import Path

    from . import cli

    tmp = Path(tmp_dir)
    outputs, streams = [], []
    for tag, jobs in (("a", 1), ("b", 2)):
        path = tmp / f"zz-{tag}.csv"
        buf = io.StringIO()
        with contextlib.redirect_stdout(buf):
            rc = cli.main(
                ["sums", "--pair", "zz", "--limit", str(HEADLINE_LIMIT),
                 "--jobs", str(jobs), "--out", str(path)]
            )
        if rc != 0:
            return _result(name, False, f"cli exited {rc}")
        outputs.append(path.read_bytes())
        streams.append(buf.getvalue())
    ok = outputs[0] == outputs[1] and streams[0] == streams[1]
    return _result(
        name, ok,
        f"csv bytes equal={outputs[0] == outputs[1]}, stdout equal={streams[0] == streams[1]}"
    )


def resource_guard(fn, *args, **kwargs):
    """Run a check, converting a bit-budget refusal into a 'resource' result."""
    try:
        return fn(*args, **kwargs)
    except ResourceLimitError as exc:
        return CheckResult(fn.__name__, "resource", str(exc))


def run_all(limit: int = HEADLINE_LIMIT, jobs: int = 1, tmp_dir=None) -> list[CheckResult]:
    """Run the whole checklist; builds one flag table up front."""
    t0 = time.perf_counter()
    table = additive.build_range_table(limit, jobs=jobs)
    build_seconds = time.perf_counter() - t0
    checklist = [
        (check_two_zumkeller_headline, (table, build_seconds if jobs == 1 else None)),
        (check_even_characterization, (table,)),
        (check_explicit_decompositions, (table,)),
        (check_small_zumkeller_facts, (table,)),
        (check_oracle_agreement, ()),
        (check_fast_path_soundness, ()),
        (check_table_rows, ()),
        (check_zum_square, (table,)),
        (check_zum_prime, (table,)),
        (check_zum_practical, (table,)),
        (check_blocks_and_abundancy, ()),
        (check_consecutive_witness, ()),
        (check_sampled_properties, (table,)),
    ]
    results = [resource_guard(fn, *args) for fn, args in checklist]
    if tmp_dir is not None:
        results.append(resource_guard(check_deterministic_csv, limit, tmp_dir))
    else:
        import tempfile

        with tempfile.TemporaryDirectory() as td:
            results.append(resource_guard(check_deterministic_csv, limit, td))
    return results

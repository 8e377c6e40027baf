"""Pair-sum range scans: witnesses, census values, checkpoint resume."""

import numpy as np
import pytest

from zumkeller.additive import (
    EIGHTEEN_K_IDENTITIES,
    EVEN_DECOMPOSITIONS,
    EVEN_EXCEPTIONS,
    ODD_WINDOW,
    PairType,
    aggregates_from_non_representables,
    build_range_table,
    classify_pair_sums,
    density_counts,
    find_pair_witness,
    non_representable_list,
    run_pair_scan,
    scan_conjecture_18k3,
    verify_even_characterization,
    verify_zum_practical,
    verify_zum_prime,
    verify_zum_square,
)
from zumkeller.errors import DomainError
from zumkeller.store import RunManifest, load_manifest

ZUMKELLER_PREFIX = [
    6, 12, 20, 24, 28, 30, 40, 42, 48, 54,
    56, 60, 66, 70, 78, 80, 84, 88, 90, 96,
]


def test_table_zumkeller_prefix(table2k):
    got = [n for n in range(1, 100) if table2k.zumkeller[n]]
    assert got == ZUMKELLER_PREFIX


def test_table_flag_arrays_are_consistent(table10k):
    assert table10k.limit == 10_000
    assert not table10k.zumkeller[0]
    assert table10k.practical[1] and table10k.practical[2]
    assert table10k.prime[2] and not table10k.prime[1]
    assert table10k.square[1] and table10k.square[9801] and not table10k.square[9802]


def test_second_category_names():
    assert PairType.ZUM_ZUM.second_category == "zumkeller"
    assert PairType.ZUM_PRACTICAL.second_category == "practical"
    assert PairType.ZUM_SQUARE.second_category == "square"
    assert PairType.ZUM_PRIME.second_category == "prime"


@pytest.mark.parametrize(
    "pair,n,expected",
    [
        (PairType.ZUM_ZUM, 12, (6, 6)),
        (PairType.ZUM_ZUM, 44, (20, 24)),
        (PairType.ZUM_ZUM, 38, None),
        (PairType.ZUM_ZUM, 90, (6, 84)),
        (PairType.ZUM_SQUARE, 21, (20, 1)),
        (PairType.ZUM_SQUARE, 19, None),
        (PairType.ZUM_PRIME, 8, (6, 2)),
        (PairType.ZUM_PRIME, 21, None),
        (PairType.ZUM_PRACTICAL, 7, (6, 1)),
        (PairType.ZUM_PRACTICAL, 25, (24, 1)),
        (PairType.ZUM_PRACTICAL, 6, None),
    ],
)
def test_find_pair_witness(table10k, pair, n, expected):
    assert find_pair_witness(table10k, pair, n) == expected


def test_witness_parts_carry_their_flags(table10k):
    for pair in PairType:
        flags = table10k.flags(pair.second_category)
        for n in range(1, 400):
            witness = find_pair_witness(table10k, pair, n)
            if witness is None:
                continue
            a, b = witness
            assert a + b == n
            assert table10k.zumkeller[a]
            assert flags[b]


def test_forward_and_reverse_scans_agree(table10k):
    for pair in PairType:
        for n in range(1, 200):
            fwd = find_pair_witness(table10k, pair, n)
            rev = find_pair_witness(table10k, pair, n, reverse=True)
            assert (fwd is None) == (rev is None), (pair, n)


def test_explicit_decomposition_table(table2k):
    assert len(EVEN_DECOMPOSITIONS) == 33
    assert EVEN_DECOMPOSITIONS[12] == (6, 6)
    assert EVEN_DECOMPOSITIONS[44] == (24, 20)
    assert EVEN_DECOMPOSITIONS[58] == (30, 28)
    for n, (a, b) in EVEN_DECOMPOSITIONS.items():
        assert a + b == n
        assert table2k.zumkeller[a] and table2k.zumkeller[b]


def test_18k_identities(table2k):
    assert len(EIGHTEEN_K_IDENTITIES) == 9
    assert {r for r, *_ in EIGHTEEN_K_IDENTITIES} == set(range(0, 18, 2))
    for r, shift, base, addend in EIGHTEEN_K_IDENTITIES:
        for k in range(5, 40):
            n = 18 * k + r
            first = 18 * (k - shift) + base
            assert first + addend == n
            assert table2k.zumkeller[addend]
            if first <= table2k.limit:
                assert table2k.zumkeller[first], (r, k)


def test_non_representable_evens_to_10k(table10k):
    nonrep = non_representable_list(table10k, PairType.ZUM_ZUM)
    evens = [n for n in nonrep if n % 2 == 0]
    assert evens == [2, 4, 6, 8, 10, 14, 16, 20, 22, 28, 38]
    assert set(evens[5:]) == EVEN_EXCEPTIONS
    # 951 = 945 + 6 is the first representable odd number
    assert 951 not in nonrep
    assert 953 in nonrep
    assert all(n % 2 for n in nonrep if n > 38)


def test_even_characterization_report(table10k):
    report = verify_even_characterization(table10k)
    assert report.ok
    assert report.mismatches == []
    assert report.bad_decompositions == []
    assert report.bad_identities == []


def test_aggregates_shape():
    agg = aggregates_from_non_representables([3, 5, 38, 953, 1001], 2000)
    assert agg["count"] == 5
    assert agg["max"] == 1001
    assert agg["odd_window_count"] == 2  # 953 and 1001 sit inside ODD_WINDOW
    assert ODD_WINDOW == (953, 32761)


def test_run_pair_scan_single_shot_matches_census(table10k):
    values, agg = run_pair_scan(table10k, PairType.ZUM_ZUM)
    assert values == non_representable_list(table10k, PairType.ZUM_ZUM)
    assert agg["count"] == len(values)
    assert agg["max"] == max(values)


def test_run_pair_scan_resume(table10k, tmp_path):
    path = tmp_path / "scan.json"
    manifest = RunManifest(limit=10_000, pair_type="zz", chunk_size=1500)
    partial, meta = run_pair_scan(
        table10k, PairType.ZUM_ZUM, manifest, manifest_path=path, stop_after=3
    )
    assert partial == [] and meta == {"complete": False, "chunks_done": 3}

    resumed = load_manifest(path)
    assert sorted(resumed.completed) == [0, 1, 2]
    values, agg = run_pair_scan(
        table10k, PairType.ZUM_ZUM, resumed, manifest_path=path
    )
    single, single_agg = run_pair_scan(table10k, PairType.ZUM_ZUM)
    assert values == single
    assert agg == single_agg
    assert load_manifest(path).aggregates == agg


def test_run_pair_scan_rejects_mismatched_manifest(table10k):
    manifest = RunManifest(limit=5_000, pair_type="zz", chunk_size=1000)
    with pytest.raises(DomainError):
        run_pair_scan(table10k, PairType.ZUM_ZUM, manifest)


def test_zum_square_report(table10k):
    report = verify_zum_square(table10k)
    assert report.ok
    assert report.class_non_representables == [1, 3, 4, 6, 12, 19, 30]


def test_zum_prime_report(table10k):
    report = verify_zum_prime(table10k)
    assert report.ok
    # class members below the threshold 8
    assert report.class_non_representables == [1, 5, 7]


def test_zum_practical_report(table10k):
    report = verify_zum_practical(table10k)
    assert report.ok
    assert report.class_non_representables == [2, 4, 6]
    assert report.least_universal_bound is not None


def test_conjecture_18k3_scan(table10k):
    report = scan_conjecture_18k3(table10k, 500)
    assert report.ok
    assert not report.k1_representable
    assert report.counterexamples == []
    assert report.witnesses[2] == (28, 11)
    for k, (a, p) in report.witnesses.items():
        assert a + p == 18 * k + 3
        assert table10k.zumkeller[a] and table10k.prime[p]


def test_classify_pair_sums_reports(table10k):
    reports = classify_pair_sums(table10k, PairType.ZUM_SQUARE, 22)
    by_n = {r.n: r for r in reports}
    assert len(reports) == 22
    assert not by_n[19].representable and by_n[19].witness is None
    assert by_n[21].representable and by_n[21].witness == (20, 1)
    assert by_n[22].witness == (6, 16)


def test_density_counts(table10k):
    zp = density_counts(table10k, PairType.ZUM_PRIME, [7, 100, 10_000])
    zs = density_counts(table10k, PairType.ZUM_PRACTICAL, [6, 100, 10_000])
    assert zp[0] == (7, 7)  # smallest zum+prime sum is 6 + 2 = 8
    assert zs[0] == (6, 6)
    assert zp == [(7, 7), (100, 35), (10_000, 1820)]
    assert zs == [(6, 6), (100, 33), (10_000, 686)]
    counts = [c for _, c in zp]
    assert counts == sorted(counts)


def test_parallel_build_matches_serial():
    serial = build_range_table(4000, jobs=1)
    parallel = build_range_table(4000, jobs=2)
    for kind in ("zumkeller", "practical", "prime", "square"):
        assert np.array_equal(serial.flags(kind), parallel.flags(kind)), kind

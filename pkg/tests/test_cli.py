"""Command-line interface: output contract, exit codes, determinism."""

import contextlib
import io
import json

import pytest

from zumkeller import cli
from zumkeller.store import import_csv, load_bitmap


def run_cli(*args):
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = cli.main(list(args))
    return code, out.getvalue(), err.getvalue()


def test_classify_zumkeller():
    code, out, _ = run_cli("classify", "6")
    assert code == 0
    assert out.splitlines() == [
        "n = 6",
        "sigma = 12",
        "abundancy = 2",
        "zumkeller = yes",
        "practical = yes",
        "prime = no",
        "square = no",
    ]


def test_classify_rejection_reason():
    code, out, _ = run_cli("classify", "9")
    assert code == 0
    assert "zumkeller = no (sigma_odd)" in out
    assert "abundancy = 13/9" in out
    assert "square = yes" in out


def test_classify_witness_partition():
    code, out, _ = run_cli("classify", "945", "--witness")
    assert code == 0
    line = next(l for l in out.splitlines() if l.startswith("partition = "))
    left, right = line.removeprefix("partition = ").split(" / ")
    half_a = json.loads(left)
    half_b = json.loads(right)
    assert 945 in half_a
    assert sum(half_a) == sum(half_b) == 960
    assert not set(half_a) & set(half_b)


def test_classify_jsonl():
    code, out, _ = run_cli("classify", "6", "--format", "jsonl")
    assert code == 0
    doc = json.loads(out)
    assert doc == {
        "n": 6,
        "sigma": 12,
        "abundancy": "2",
        "zumkeller": True,
        "practical": True,
        "prime": False,
        "square": False,
    }


@pytest.mark.parametrize("bad", [["classify", "0"], ["classify", "abc"],
                                 ["classify", "-4"], ["sums", "--pair", "xx"],
                                 ["witness", "--blocks", "junk"],
                                 ["witness", "--blocks", "0"], []])
def test_usage_errors_exit_2(bad):
    code, _, err = run_cli(*bad)
    assert code == 2
    assert "error" in err


def test_sums_zz_with_csv(tmp_path):
    out_csv = tmp_path / "nonrep.csv"
    code, out, _ = run_cli("sums", "--pair", "zz", "--limit", "200",
                           "--out", str(out_csv))
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "pair zumkeller+zumkeller, limit 200"
    assert "non-representable count: 111" in lines
    assert "max non-representable: 199" in lines
    values = import_csv(out_csv)
    assert len(values) == 111
    assert max(values) == 199
    assert 12 not in values and 38 in values


def test_sums_zq_reports_class_census():
    code, out, _ = run_cli("sums", "--pair", "zq", "--limit", "100")
    assert code == 0
    assert "non-representable within residue classes: [1, 3, 4, 6, 12, 19, 30]" in out


def test_sums_zp_reports_conjecture_scan():
    code, out, _ = run_cli("sums", "--pair", "zp", "--limit", "100")
    assert code == 0
    assert "18k+3 scan (k = 2..5): counterexamples = none; n=21 representable: no" in out


def test_sums_deterministic_across_jobs(tmp_path):
    csv_a = tmp_path / "a.csv"
    csv_b = tmp_path / "b.csv"
    code_a, out_a, _ = run_cli("sums", "--pair", "zz", "--limit", "3000",
                               "--jobs", "1", "--out", str(csv_a))
    code_b, out_b, _ = run_cli("sums", "--pair", "zz", "--limit", "3000",
                               "--jobs", "2", "--out", str(csv_b))
    assert code_a == code_b == 0
    assert out_a == out_b
    assert csv_a.read_bytes() == csv_b.read_bytes()


def test_sums_manifest_resume(tmp_path):
    manifest = tmp_path / "scan.json"
    csv_a = tmp_path / "direct.csv"
    csv_b = tmp_path / "resumed.csv"
    run_cli("sums", "--pair", "zz", "--limit", "2000", "--out", str(csv_a))
    # two passes against the same manifest: fresh, then no-op resume
    for _ in range(2):
        code, _, _ = run_cli("sums", "--pair", "zz", "--limit", "2000",
                             "--manifest", str(manifest), "--chunk-size", "500",
                             "--out", str(csv_b))
        assert code == 0
        assert csv_b.read_bytes() == csv_a.read_bytes()


def test_witnesses_csv(tmp_path):
    wit = tmp_path / "wit.csv"
    code, _, _ = run_cli("sums", "--pair", "zp", "--limit", "50",
                         "--witnesses-out", str(wit))
    assert code == 0
    lines = wit.read_text().splitlines()
    assert lines[0] == "n,a,b,category_a,category_b"
    assert "8,6,2,zumkeller,prime" in lines


def test_table1_command():
    code, out, _ = run_cli("table1")
    assert code == 0
    assert out.strip() == "44/44 rows pass"


def test_runs_command():
    code, out, _ = run_cli("runs", "--limit", "40")
    assert code == 0
    assert out.splitlines() == ["6 1", "12 1", "20 1", "24 1", "28 1", "30 1", "40 1"]


def test_ak_command():
    code, out, _ = run_cli("ak", "--k", "1")
    assert code == 0
    assert out.strip() == "f(1) = 2, A_1 = 6, zumkeller = yes"


def test_ak_command_unknown_verdict():
    code, out, _ = run_cli("ak", "--k", "5")
    assert code == 0
    assert out.startswith("f(5) = 35, A_5 = ")
    assert out.strip().endswith("zumkeller = unknown")


def test_alambda_command():
    code, out, _ = run_cli("alambda", "--num", "2", "--k", "1", "--bound", "10000")
    assert code == 0
    assert out.strip() == "A = 945, u = 4, block divisor = 105, lemma-check: pass"


def test_witness_command_single_block():
    code, out, _ = run_cli("witness", "--blocks", "1")
    assert code == 0
    lines = out.splitlines()
    assert "n = 5" in lines
    assert "period = 36" in lines
    assert "n+1 = 6 * 1" in lines


def test_witness_command_rejects_overlap():
    code, _, err = run_cli("witness", "--blocks", "1,2")
    assert code == 1
    assert "share factor 3" in err


def test_witness_command_two_blocks():
    code, out, _ = run_cli("witness", "--blocks", "1,3")
    assert code == 0
    assert "n = 8938780044741388396553" in out


def test_sieve_roundtrip(tmp_path, table2k):
    import numpy as np

    path = tmp_path / "zum.bitmap"
    code, out, _ = run_cli("sieve", "--kind", "zumkeller", "--limit", "2000",
                           "--out", str(path))
    assert code == 0
    assert f"({path.stat().st_size} bytes)" in out
    loaded = load_bitmap(path)
    assert loaded.kind == "zumkeller"
    assert np.array_equal(loaded.flags, table2k.zumkeller)


def test_verify_paper_low_limit_skips_cleanly():
    code, out, _ = run_cli("verify-paper", "--limit", "2000")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 14
    assert all(l.startswith(("[    PASS]", "[    SKIP]")) for l in lines)
    assert sum(l.startswith("[    PASS]") for l in lines) == 7

import csv
import io
import json

import pytest
from hypothesis import given, strategies as st

from supercong import REPORT_SCHEMA_VERSION, cli
from supercong.claims import CLAIM_IDS, CLAIMS
from supercong.modring import is_prime
from supercong.sweep import (
    CSV_HEADER,
    ConfigError,
    InvalidRange,
    Report,
    SweepConfig,
    emit_report,
    read_config_file,
    run_sweep,
    sieve_primes,
)


def test_sieve_examples():
    assert sieve_primes(5, 20) == [5, 7, 11, 13, 17, 19]
    assert sieve_primes(2, 4) == [2, 3]
    assert sieve_primes(90, 100) == [97]
    with pytest.raises(InvalidRange):
        sieve_primes(1, 10)
    with pytest.raises(InvalidRange):
        sieve_primes(20, 10)


@given(st.integers(2, 3000), st.integers(0, 400))
def test_sieve_matches_primality_test(lo, width):
    hi = lo + width
    assert sieve_primes(lo, hi) == [n for n in range(lo, hi + 1) if is_prime(n)]


def test_config_validation():
    with pytest.raises(ConfigError):
        SweepConfig(lo=10, hi=5)
    with pytest.raises(ConfigError):
        SweepConfig(jobs=0)
    with pytest.raises(ConfigError):
        SweepConfig(claims=("C99",))
    with pytest.raises(ConfigError):
        SweepConfig(format="xml")


def test_single_c1_sweep():
    report = run_sweep(SweepConfig(lo=5, hi=5, claims=("C1",)))
    assert len(report.results) == 1
    r = report.results[0]
    assert r.passed and r.lhs == r.rhs == 74
    assert report.exit_code == 0


def test_empty_range_is_vacuous():
    report = run_sweep(SweepConfig(lo=2, hi=4))
    assert report.results == [] and report.exit_code == 0
    assert any("2, 3" in n for n in report.notices)
    assert emit_report(report, "csv").decode() == ",".join(CSV_HEADER) + "\n"


def test_perk_cap_and_ordering():
    report = run_sweep(SweepConfig(lo=5, hi=40, claims=("C10d", "C1"), perk_cap=13, oracle_cap=20))
    assert [(r.claim, r.p) for r in report.results] == (
        [("C1", p) for p in (5, 7, 11, 13, 17, 19, 23, 29, 31, 37)] + [("C10d", p) for p in (5, 7, 11, 13)])
    s = report.summary()
    assert s["C1"]["primes_checked"] == 10 and s["C10d"]["primes_checked"] == 4
    assert report.ok


def test_csv_row_format():
    report = run_sweep(SweepConfig(lo=5, hi=5, claims=("C1",)))
    lines = emit_report(report, "csv").decode().splitlines()
    assert lines[0] == "claim,p,modulus,pass,lhs,rhs,failing_k,ms"
    assert lines[1].startswith("C1,5,125,true,74,74,,")
    ms = lines[1].rsplit(",", 1)[1]
    assert float(ms) >= 0


def test_json_round_trip_and_string_residues():
    report = run_sweep(SweepConfig(lo=5, hi=50, claims=("C1", "C7", "C10f"), perk_cap=20))
    doc = json.loads(emit_report(report, "json"))
    assert list(doc) == ["schema_version", "tool_version", "config", "summary", "consistency",
                         "notices", "failures", "results"]
    assert doc["schema_version"] == REPORT_SCHEMA_VERSION
    assert all(isinstance(r["lhs"], str) for r in doc["results"])
    back = Report.from_dict(doc)
    assert back.results == report.results
    assert back.config == report.config and back.wall_ms == report.wall_ms
    assert emit_report(back, "json") == emit_report(report, "json")


def test_text_format_mentions_every_claim():
    report = run_sweep(SweepConfig(lo=5, hi=13, perk_cap=13))
    text = emit_report(report, "text").decode()
    for cid in CLAIM_IDS:
        assert f"\n{cid} " in text
    assert text.rstrip().endswith("ALL PASS")


def test_no_timing_is_byte_identical_across_jobs():
    a = run_sweep(SweepConfig(lo=5, hi=60, perk_cap=30, oracle_cap=20, no_timing=True, jobs=1))
    b = run_sweep(SweepConfig(lo=5, hi=60, perk_cap=30, oracle_cap=20, no_timing=True, jobs=3))
    for fmt in ("json", "csv", "text"):
        assert emit_report(a, fmt) == emit_report(b, fmt)


def test_oracle_disagreement_is_a_failure(monkeypatch):
    from dataclasses import replace

    # Make the fast path lie; the oracle still tells the truth.
    monkeypatch.setitem(CLAIMS, "C10c", replace(CLAIMS["C10c"], lhs=lambda ctx: 1, rhs=lambda ctx: 1))
    report = run_sweep(SweepConfig(lo=5, hi=13, claims=("C10c",), oracle_cap=7))
    bad = {r.p: r for r in report.failures}
    assert set(bad) == {5, 7}
    assert "oracle disagreement" in bad[5].diagnostic
    assert report.exit_code == 1


def test_read_config_file(tmp_path):
    path = tmp_path / "sweep.conf"
    path.write_text("# comment\nprimes = 5:30\nperk_cap = 11   # trailing\n\nformat=csv\n")
    assert read_config_file(str(path)) == {"primes": "5:30", "perk-cap": "11", "format": "csv"}
    (tmp_path / "bad.conf").write_text("primes 5:30\n")
    with pytest.raises(ConfigError):
        read_config_file(str(tmp_path / "bad.conf"))


# -- CLI ---------------------------------------------------------------------


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_cli_verify_csv(capsys):
    code, out, _ = run_cli(capsys, "verify", "--primes", "5:5", "--claims", "C1", "--format", "csv", "--no-timing")
    assert code == 0
    assert out.splitlines() == ["claim,p,modulus,pass,lhs,rhs,failing_k,ms", "C1,5,125,true,74,74,,"]


def test_cli_exit_code_on_failure(capsys, monkeypatch):
    from dataclasses import replace
    from fractions import Fraction
    from functools import partial

    from supercong import fast

    monkeypatch.setitem(CLAIMS, "C1", replace(CLAIMS["C1"], rhs=partial(fast.c1_rhs, coeff=Fraction(1, 3))))
    code, out, _ = run_cli(capsys, "verify", "--primes", "5:11", "--claims", "C1", "--oracle-cap", "0",
                           "--format", "text")
    assert code == 1
    assert "FAIL C1 p=5" in out


@pytest.mark.parametrize("argv", [
    ["verify", "--primes", "5"],
    ["verify", "--primes", "20:10"],
    ["verify", "--claims", "C1,C77"],
    ["verify", "--jobs", "0"],
    ["verify", "--jobs", "many"],
    ["verify", "--format", "xml"],
    ["identities", "--only", "I99"],
    ["identities", "--n-max", "0"],
    ["seq", "--name", "catalan", "--upto", "3"],
    ["seq", "--name", "apery", "--upto", "-1"],
    ["frobnicate"],
    [],
])
def test_cli_usage_errors_exit_2(capsys, argv):
    try:
        code = cli.main(argv)
    except SystemExit as exc:
        code = exc.code
    capsys.readouterr()
    assert code == 2


def test_cli_version(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["--version"])
    assert exc.value.code == 0
    assert f"report schema {REPORT_SCHEMA_VERSION}" in capsys.readouterr().out


def test_cli_seq(capsys):
    code, out, _ = run_cli(capsys, "seq", "--name", "apery", "--upto", "4")
    assert code == 0
    assert out.splitlines() == ["0 1", "1 5", "2 73", "3 1445", "4 33001"]
    code, out, _ = run_cli(capsys, "seq", "--name", "franel", "--upto", "4")
    assert out.split() == ["0", "1", "1", "2", "2", "10", "3", "56", "4", "346"]


def test_cli_identities(capsys):
    code, out, _ = run_cli(capsys, "identities", "--only", "I2,I4", "--n-max", "30", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert [r["id"] for r in doc["identities"]] == ["I2", "I4"]
    code, out, _ = run_cli(capsys, "identities", "--n-max", "8", "--budget", "10")
    assert code == 0 and out.count("PASS") == 11


def test_cli_identities_failure_exit(capsys, monkeypatch):
    from supercong import identities

    monkeypatch.setitem(identities._BY_NAME, "sigma-rising", identities.mutated_i5(identities.Fraction(2, 3)))
    code, out, _ = run_cli(capsys, "identities", "--only", "sigma-rising", "--n-max", "10")
    assert code == 1 and "first failure at {'n': 2}" in out


def test_cli_config_precedence(capsys, tmp_path, monkeypatch):
    conf = tmp_path / "c.conf"
    conf.write_text("primes = 5:13\nclaims = C2\nformat = csv\nno-timing = true\n")
    monkeypatch.setenv("SUPERCONG_CONFIG", str(conf))
    code, out, _ = run_cli(capsys, "verify")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0 and [r[1] for r in rows[1:]] == ["5", "7", "11", "13"]
    code, out, _ = run_cli(capsys, "verify", "--primes", "5:7", "--claims", "C1")
    rows = list(csv.reader(io.StringIO(out)))
    assert [(r[0], r[1]) for r in rows[1:]] == [("C1", "5"), ("C1", "7")]
    conf.write_text("colour = blue\n")
    code, _, err = run_cli(capsys, "verify")
    assert code == 2 and "unknown config keys" in err


def test_cli_out_file(capsys, tmp_path):
    path = tmp_path / "r.json"
    code, out, _ = run_cli(capsys, "verify", "--primes", "5:7", "--claims", "C3,C4", "--out", str(path))
    assert code == 0 and out == ""
    doc = json.loads(path.read_text())
    assert doc["summary"]["C3"]["passes"] == 2

"""CLI contract: exit codes, determinism, cache hygiene, formats."""

import json
import os

import pytest

from qhcalc import cli


@pytest.fixture()
def cache_env(tmp_path, monkeypatch):
    monkeypatch.setenv("QHCALC_CACHE_DIR", str(tmp_path / "cache"))
    return tmp_path


def test_config_errors(cache_env, capsys):
    assert cli.main(["flatness", "--q", "0"]) == 2
    assert cli.main(["flatness", "--q", "1"]) == 2
    assert cli.main(["derham", "--degree", "1"]) == 2
    assert cli.main(["derham", "--degree", "4", "--spin-cutoff", "4"]) == 2
    assert cli.main(["derham", "--q", "not-a-number"]) == 2
    assert cli.main(["derham", "--q", "3/2", "--hbar", "1"]) == 2
    capsys.readouterr()


def test_flatness_pass(cache_env, capsys):
    assert cli.main(["flatness", "--q", "3/2", "--degree", "3"]) == 0
    out = capsys.readouterr().out
    assert out.count("PASS flatness") == 4


def test_deterministic_reports(cache_env, capsys):
    args = ["koszul", "--q", "5/7", "--degree", "4"]
    out1 = str(cache_env / "a.json")
    out2 = str(cache_env / "b.json")
    assert cli.main(args + ["--out", out1]) == 0
    assert cli.main(args + ["--out", out2]) == 0
    with open(out1, "rb") as f1, open(out2, "rb") as f2:
        assert f1.read() == f2.read()
    capsys.readouterr()


def test_random_q_reproducible(cache_env, capsys):
    out1 = str(cache_env / "r1.json")
    out2 = str(cache_env / "r2.json")
    base = ["flatness", "--q", "random", "--degree", "3"]
    assert cli.main(base + ["--seed", "9", "--out", out1]) == 0
    assert cli.main(base + ["--seed", "9", "--out", out2]) == 0
    with open(out1) as fh:
        rep1 = json.load(fh)
    with open(out2) as fh:
        rep2 = json.load(fh)
    assert rep1 == rep2
    num, _, den = rep1["config"]["q_value"].partition("/")
    assert 2 <= int(num) <= 97 and 2 <= int(den or "1") <= 97
    assert rep1["config"]["q_value"] != "1"
    capsys.readouterr()


def test_check_failure_writes_report(cache_env, capsys, monkeypatch):
    # force a falsified claim: the cohomology of the complex is reported
    # wrong, which must yield exit 1 with the report still on disk
    def fake_cohomology(om0, om1, om2, data):
        return (2, 0, 1), {}, {}
    monkeypatch.setattr(cli, "cohomology", fake_cohomology)
    out = str(cache_env / "fail.json")
    code = cli.main(["derham", "--q", "3/2", "--degree", "3", "--out", out])
    assert code == 1
    with open(out) as fh:
        report = json.load(fh)
    names = {c["name"]: c["status"] for c in report["checks"]}
    assert names["cohomology"] == "fail"
    assert report["summary"]["fail"] == 1
    capsys.readouterr()


def test_cache_lifecycle(cache_env, capsys):
    assert cli.main(["cache", "clear"]) == 0
    assert cli.main(["derham", "--q", "3/2", "--degree", "3"]) == 0
    capsys.readouterr()
    assert cli.main(["cache", "list"]) == 0
    out = capsys.readouterr().out
    assert "1 entries" in out
    assert "q=3/2;c=1;hbar=0;N=3" in out
    # a second run loads the table without rebuilding it
    assert cli.main(["derham", "--q", "3/2", "--degree", "3"]) == 0
    capsys.readouterr()
    assert cli.main(["cache", "clear"]) == 0
    out = capsys.readouterr().out
    assert "removed 1 entries" in out


def test_corrupted_cache_is_quarantined(cache_env, capsys):
    cdir = os.environ["QHCALC_CACHE_DIR"]
    os.makedirs(cdir, exist_ok=True)
    bad = os.path.join(cdir, "0000.json")
    with open(bad, "w") as fh:
        fh.write("{not json")
    assert cli.main(["cache", "inspect"]) == 0
    out = capsys.readouterr().out
    assert "quarantined" in out
    assert not os.path.exists(bad)
    assert os.path.exists(bad + ".corrupt")


def test_corrupted_cache_does_not_break_runs(cache_env, capsys):
    assert cli.main(["derham", "--q", "3/2", "--degree", "3"]) == 0
    capsys.readouterr()
    from fractions import Fraction
    from qhcalc.hyperboloid import QHParams
    from qhcalc.qfield import QRing
    path = cli._cache_path(QHParams(QRing(Fraction(3, 2)), 1, 0, 3))
    with open(path, "w") as fh:
        fh.write("garbage")
    assert cli.main(["derham", "--q", "3/2", "--degree", "3"]) == 0
    assert os.path.exists(path + ".corrupt")
    capsys.readouterr()


def test_csv_format(cache_env, capsys):
    out = str(cache_env / "r.csv")
    assert cli.main(["flatness", "--q", "3/2", "--degree", "3",
                     "--format", "csv", "--out", out]) == 0
    with open(out) as fh:
        lines = fh.read().splitlines()
    assert lines[0] == "check,status,key,value"
    assert all(line.count(",") >= 3 for line in lines[1:])
    capsys.readouterr()


def test_report_schema(cache_env, capsys):
    out = str(cache_env / "s.json")
    assert cli.main(["metric", "--q", "3/2", "--degree", "4",
                     "--out", out]) == 0
    with open(out) as fh:
        report = json.load(fh)
    assert set(report) == {"tool", "version", "config", "checks", "summary"}
    for c in report["checks"]:
        assert c["status"] in ("pass", "fail", "skipped")
        assert isinstance(c["detail"], dict)
    # the classical-limit check is skipped at a specialized q
    skipped = [c for c in report["checks"] if c["status"] == "skipped"]
    assert any(c["name"] == "metric_classical_limit" for c in skipped)
    capsys.readouterr()

import json
import subprocess
import sys
from fractions import Fraction as Fr

import pytest

from polycoprime.cli import decimal_str, int_str, main, record_parts, record_value, str_int
from polycoprime.formulas import wj_exact_pair


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


def test_setwise_probability_flag(capsys):
    code, rep = run_json(capsys, "probability", "--lemma", "coprime", "-N", "3", "-q", "2")
    assert code == 0 and rep["command"] == "probability"
    assert record_value(rep["results"][0]) == Fr(3, 4)
    assert set(rep) == {"command", "params", "results", "timing_ms"}


def test_pairwise_asym(capsys):
    _, rep = run_json(capsys, "probability", "--thm", "pairwise-asym", "-N", "3", "--n1", "0")
    c2 = [r for r in rep["results"] if r["name"].endswith("t^2")][0]
    assert record_value(c2) == 5


def test_conclusion(capsys):
    _, rep = run_json(capsys, "probability", "--conclusion", "-q", "2")
    assert [record_value(r) for r in rep["results"]] == [Fr(5, 6), Fr(21, 32)]


def test_density_pairwise(capsys):
    _, rep = run_json(capsys, "density", "--pairwise", "-N", "2", "-q", "2", "-J", "20")
    r = rep["results"][0]
    assert abs(float(r["decimal"]) - 0.5) < 1e-4
    from polycoprime.formulas import pairwise_density_truncated
    tp = pairwise_density_truncated(2, 2, 20)
    assert record_parts(r) == (tp.numerator, tp.denominator)
    tail = r["tail_bound"]
    assert Fr(int(tail["num"]), int(tail["den"])) < Fr(1, 10**4)


def test_density_mutual(capsys):
    _, rep = run_json(capsys, "density", "--mutual", "-m", "2", "-N", "2", "-q", "2", "-J", "12")
    assert abs(record_value(rep["results"][0]) - Fr(21, 32)) < Fr(1, 1000)
    assert rep["results"][0]["mode"] == "truncated"


def test_density_scan_csv(capsys):
    code, out = run(capsys, "density", "--scan", "-m", "1", "-N", "2", "-q", "2",
                    "--cutoffs", "3,7,15,31", "--output", "csv")
    lines = out.strip().splitlines()
    assert code == 0 and lines[0].startswith("n,numerator,denominator,decimal")
    assert [line.split(",")[0] for line in lines[1:]] == ["3", "7", "15", "31"]


def test_census_wj(capsys):
    _, rep = run_json(capsys, "census", "--wj", "-m", "1", "-N", "3", "-q", "2", "-j", "1")
    r = rep["results"][0]
    assert record_value(r) == Fr(1, 2) and r["mode"] == "exhaustive"
    assert "seed" in r and "ceiling" in r


def test_census_graph(capsys):
    _, rep = run_json(capsys, "census", "--graph", "complete", "-N", "3", "-q", "2",
                      "--degrees", "1,1,1")
    r = rep["results"][0]
    # only two monic linears exist, so three pairwise coprime ones cannot
    assert (r["hits"], r["total"]) == (0, 8)


def test_census_mc_ci_covers_truth(capsys):
    _, rep = run_json(capsys, "census", "--wj", "-m", "2", "-N", "2", "-q", "2", "-j", "2",
                      "--mc", "--samples", "100000", "--seed", "7")
    r = rep["results"][0]
    lo, hi = (Fr(int(x["num"]), int(x["den"])) for x in r["ci"])
    assert r["mode"] == "montecarlo" and lo <= wj_exact_pair(2, 2, 2) <= hi


def test_csv_is_byte_identical(capsys, tmp_path):
    args = ["census", "--wj", "-m", "2", "-N", "3", "-q", "2", "--mc", "--samples", "5000",
            "--seed", "3", "--output", "csv"]
    outs = []
    for i in range(2):
        path = tmp_path / f"out{i}.csv"
        assert main(args + ["--out", str(path)]) == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1] and b"/" in outs[0]


def test_verify_exit_status(capsys):
    code, rep = run_json(capsys, "verify", "identities")
    assert code == 0 and all(r["passed"] for r in rep["results"])
    names = " ".join(r["name"] for r in rep["results"])
    assert "binom_identity M=30" in names and "phi sieve" in names


def test_verify_failure_exit(monkeypatch, capsys):
    from polycoprime import cli
    from polycoprime.verify import Check
    monkeypatch.setattr(cli, "run_suite", lambda name: [Check("ok", True), Check("bad", False)])
    code, _ = run(capsys, "verify", "oracles")
    assert code == 1


def test_errors(capsys):
    assert main(["verify", "nonsense"]) == 2
    assert main(["probability", "--lemma", "coprime", "-N", "3", "-q", "6"]) == 2
    assert main(["census", "--wj", "-m", "3", "-N", "3", "-q", "3"]) == 2
    assert "Monte Carlo" in capsys.readouterr().err
    with pytest.raises(SystemExit):
        main(["probability"])


def test_json_roundtrip_big_rationals(capsys):
    _, rep = run_json(capsys, "density", "--pairwise", "-N", "3", "-q", "3", "-J", "7")
    from polycoprime.formulas import pairwise_density_truncated
    tp = pairwise_density_truncated(3, 3, 7)
    assert record_value(rep["results"][0]) == tp.value
    assert rep["results"][0]["decimal"] == tp.decimal(12)


def test_number_helpers():
    n = 7**40000
    assert str_int(int_str(n)) == n
    assert decimal_str(1, 3, 4) == "0.3333"
    assert decimal_str(-5, 2, 2) == "-2.50"


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "polycoprime", "probability", "--lemma",
                          "coprime", "-N", "2", "-q", "3", "--output", "csv"],
                         capture_output=True, text=True, check=True).stdout
    assert "2/3" in out

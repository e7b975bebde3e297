import csv
import json
import os

import pytest

from interpkit import __version__
from interpkit.cli import DEFAULT_SEED, RunConfig, UsageError, atomic_write, main, run

IND = {"kind": "builtin", "builtin": {"family": "indicator", "params": {"a": 0, "b": 1},
                                      "domain": [0, 2], "cells": 8}}
STEP = {"kind": "explicit", "values": [3, 1], "measures": [1, 2]}


@pytest.fixture
def work(tmp_path, monkeypatch):
    monkeypatch.setenv("INTERPKIT_OUTDIR", str(tmp_path))
    (tmp_path / "ind.json").write_text(json.dumps(IND))
    (tmp_path / "step.json").write_text(json.dumps(STEP))
    return tmp_path


def rows(path):
    with open(path) as fh:
        lines = fh.readlines()
    assert lines[0] == f"# interpkit {__version__}\n"
    assert lines[1].startswith("# config: ")
    json.loads(lines[1][len("# config: "):])
    return list(csv.DictReader(lines[2:]))


def test_rearrange_indicator(work):
    rc = main(["rearrange", "--data", str(work / "ind.json"), "--t", "0.1,0.5,0.9,1.5",
               "--out", "prof.csv", "--svg", "prof.svg"])
    assert rc == 0
    r = rows(work / "prof.csv")
    assert [float(x["f_star"]) for x in r[:3]] == [1, 1, 1]
    assert [float(x["f_star_star"]) for x in r[:3]] == [1, 1, 1]
    assert float(r[3]["f_star"]) == 0 and float(r[3]["f_star_star"]) == pytest.approx(2 / 3)
    assert (work / "prof.svg").read_bytes().startswith(b"<?xml")


def test_outputs_are_byte_identical(work):
    # the config (output paths included) is echoed, so compare reruns of one config
    runs = [["rearrange", "--data", str(work / "step.json"), "--out", "r.csv"],
            ["opnorm", "--op", "convolution", "--samples", "50", "--out", "o.json"],
            ["figures", "--style", "figure1", "--data", str(work / "step.json"), "--out", "f.svg"]]
    first = {}
    for argv in runs:
        assert main(argv) == 0
        first[argv[-1]] = (work / argv[-1]).read_bytes()
    for argv in runs:
        assert main(argv) == 0
        assert (work / argv[-1]).read_bytes() == first[argv[-1]]


def test_config_echo_and_seed(work):
    assert main(["opnorm", "--op", "identity", "--samples", "10", "--out", "o.json"]) == 0
    doc = json.loads((work / "o.json").read_text())
    assert doc["interpkit"]["version"] == __version__
    assert doc["interpkit"]["config"]["seed"] == DEFAULT_SEED
    assert doc["interpkit"]["config"]["options"]["samples"] == 10
    assert doc["lower_bound"] == pytest.approx(1.0)
    assert main(["opnorm", "--op", "identity", "--samples", "10", "--seed", "5", "--out", "o5.json"]) == 0
    assert json.loads((work / "o5.json").read_text())["seed"] == 5


def test_lorentz_rows(work):
    assert main(["lorentz", "--data", str(work / "ind.json"), "--index", "2:2,3:1,1:2,2:inf",
                 "--out", "l.csv"]) == 0
    r = rows(work / "l.csv")
    assert float(r[0]["norm"]) == pytest.approx(2 ** 0.5)
    assert float(r[1]["norm"]) == pytest.approx(1.5)
    assert r[2]["norm"] == "inf" and r[2]["finite_flag"] == "0"
    assert r[3]["q"] == "inf" and float(r[3]["norm"]) == pytest.approx(1.0)


def test_hardy_rows(work):
    assert main(["hardy", "--p", "2", "--eps", "0.25,0.01", "--out", "h.csv"]) == 0
    r = rows(work / "h.csv")
    assert [x["bound"] for x in r] == ["2.0", "2.0"]
    assert 1.9 < float(r[1]["ratio"]) < 2.0


def test_hardy_p_one_is_usage_error(work, capsys):
    assert main(["hardy", "--p", "1"]) == 2
    err = capsys.readouterr().err.strip()
    assert "unbounded endpoint" in err and len(err.splitlines()) == 1


def test_kfunc(work):
    assert main(["kfunc", "--data", str(work / "step.json"), "--t", "0.5,2,4", "--out", "k.csv"]) == 0
    r = rows(work / "k.csv")
    assert [float(x["K_exact"]) for x in r] == [1.5, 4.0, 5.0]
    assert all(x["K_exact"] == x["K_optimized"] for x in r)


def test_interp_verify_hardy_sharp(work):
    assert main(["interp-verify", "--op", "hardy", "--p", "2", "--samples", "100", "--out", "v.json"]) == 0
    doc = json.loads((work / "v.json").read_text())
    assert doc["pass"] is True and doc["max_ratio"] <= 2.0 * (1 + 1e-9)
    assert set(doc) >= {"p_theta", "q_theta", "bound", "max_ratio", "witness", "pass"}


@pytest.mark.parametrize("op", ["identity", "convolution", "heat"])
def test_interp_verify_ops(work, op):
    extra = ["--p", "3"] if op == "identity" else []
    assert main(["interp-verify", "--op", op, "--theta", "1/4", "--samples", "50", "--out", "v.json"] + extra) == 0


def test_verification_failure_exits_one(work):
    # a kernel tolerance of -0.5 demands max_ratio <= bound / 2: guaranteed to fail
    assert main(["interp-verify", "--op", "convolution", "--samples", "20", "--tol", "-0.5",
                 "--out", "v.json"]) == 1
    assert json.loads((work / "v.json").read_text())["pass"] is False


def test_schrodinger_then_fit(work):
    assert main(["schrodinger", "--times", "0.125,0.25,0.5,1,2", "--norms", "2,4,inf",
                 "--out", "s.csv", "--svg", "s.svg"]) == 0
    r = rows(work / "s.csv")
    assert {x["pass"] for x in r} == {"pass"}
    assert main(["fit", "--csv", str(work / "s.csv"), "--out", "fit.json"]) == 0
    fit = json.loads((work / "fit.json").read_text())
    assert fit["exponent"] == pytest.approx(-0.5, abs=0.025) and fit["r_squared"] >= 0.999


def test_fit_with_three_times_is_rejected(work, capsys):
    assert main(["schrodinger", "--times", "0.5,1,2", "--norms", "inf", "--out", "s3.csv"]) == 0
    assert main(["fit", "--csv", str(work / "s3.csv")]) == 2
    assert ">= 5" in capsys.readouterr().err


def test_heat_rows_and_window(work):
    assert main(["heat", "--L", "8", "--N", "1024", "--times", "0.25,1,40", "--norms", "1,inf",
                 "--out", "h.csv"]) == 0
    r = rows(work / "h.csv")
    status = {(x["t"], x["p"]): x["pass"] for x in r}
    assert status[("0.25", "inf")] == "pass"
    assert status[("40.0", "inf")] == "out_of_window"


def test_schrodinger_p_below_two_is_na(work):
    assert main(["schrodinger", "--L", "16", "--N", "1024", "--times", "0.5", "--norms", "1",
                 "--out", "s.csv"]) == 0
    assert rows(work / "s.csv")[0]["pass"] == "n/a"


def test_figures(work):
    assert main(["figures", "--style", "figure2", "--out", "f2.svg"]) == 0
    assert main(["heat", "--out", "h.csv", "--norms", "inf"]) == 0
    assert main(["figures", "--style", "figure3", "--csv", str(work / "h.csv"), "--out", "f3.svg"]) == 0
    assert b"<svg" in (work / "f3.svg").read_bytes()


def test_figures_schema_mismatch(work):
    assert main(["rearrange", "--data", str(work / "step.json"), "--out", "p.csv"]) == 0
    assert main(["figures", "--style", "figure3", "--csv", str(work / "p.csv"), "--out", "x.svg"]) == 2
    assert not (work / "x.svg").exists()


@pytest.mark.parametrize("argv", [
    ["bogus"], [], ["rearrange"], ["rearrange", "--data", "missing.json"],
    ["lorentz", "--data", "ind.json", "--index", "2"], ["rearrange", "--data", "ind.json", "--t", "0,1"],
    ["heat", "--N", "100"],
])
def test_usage_errors(work, argv, monkeypatch):
    monkeypatch.chdir(work)
    assert main(argv) == 2


def test_malformed_json(work, capsys):
    (work / "bad.json").write_text("{nope")
    assert main(["rearrange", "--data", str(work / "bad.json")]) == 2
    assert "malformed JSON" in capsys.readouterr().err


def test_run_rejects_unknown_subcommand():
    with pytest.raises(UsageError):
        run(RunConfig("nope"))


def test_atomic_write_leaves_no_temp_files(tmp_path):
    atomic_write(tmp_path / "x.txt", "hello")
    atomic_write(tmp_path / "x.txt", "again")
    assert os.listdir(tmp_path) == ["x.txt"]
    assert (tmp_path / "x.txt").read_text() == "again"

"""Unit tests for the command-line interface."""

import json

import numpy as np
import pytest

from thetawave.cli import main

BASE = ["--lambda0", "0", "--a", "6", "--b", "8", "--c", "9"]


def run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


class TestParams:
    def test_json_report(self, capsys):
        code, out = run(capsys, ["params"] + BASE)
        assert code == 0
        rep = json.loads(out)
        assert rep["elliptic"]["a_plus"] == pytest.approx(
            0.5886313191034631, rel=1e-12)
        assert rep["periods"]["X"] == pytest.approx(0.29431565955173156)
        assert rep["periods"]["Tprime"] is None
        assert rep["reality"]["passed"] is True
        assert 0.0 < rep["h_plus"] < 1.0
        assert rep["h_minus"] < rep["h_plus"]

    def test_tprime_present_with_lambda0(self, capsys):
        code, out = run(capsys, ["params", "--lambda0", "0.5", "--a", "6",
                                 "--b", "8", "--c", "9"])
        assert code == 0
        rep = json.loads(out)
        assert rep["periods"]["Tprime"] is not None
        assert rep["solution"]["K1"] == pytest.approx(-0.5)

    def test_invalid_ordering_exit_2(self, capsys):
        code, _ = run(capsys, ["params", "--a", "9", "--b", "8", "--c", "6"])
        assert code == 2

    def test_deterministic(self, capsys):
        _, out1 = run(capsys, ["params"] + BASE)
        _, out2 = run(capsys, ["params"] + BASE)
        assert out1 == out2


class TestGrid:
    def test_csv_output(self, capsys):
        code, out = run(capsys, ["grid"] + BASE
                        + ["--nx", "3", "--nt", "2"])
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "x,t,abs_p,re_p,im_p"
        assert len(lines) == 1 + 3 * 2
        first = lines[1].split(",")
        assert float(first[2]) == pytest.approx(7.0, abs=1e-10)

    def test_abs_only_header(self, capsys):
        code, out = run(capsys, ["grid"] + BASE
                        + ["--nx", "2", "--nt", "2", "--abs-only"])
        assert code == 0
        assert out.splitlines()[0] == "x,t,abs_p"

    def test_roundtrip_precision(self, capsys):
        _, out = run(capsys, ["grid"] + BASE + ["--nx", "2", "--nt", "2"])
        row = out.strip().splitlines()[1].split(",")
        # 17 significant digits round-trip binary64 exactly
        assert float(row[2]) == float("%.17g" % float(row[2]))

    def test_pgm_output(self, capsys, tmp_path):
        out_path = tmp_path / "field.pgm"
        code, _ = run(capsys, ["grid"] + BASE
                      + ["--nx", "8", "--nt", "8", "--format", "pgm",
                         "--out", str(out_path)])
        assert code == 0
        raw = out_path.read_bytes()
        assert raw.startswith(b"P5\n8 8\n255\n")
        assert len(raw) == len(b"P5\n8 8\n255\n") + 64
        side = json.loads((tmp_path / "field.pgm.json").read_text())
        assert side["max"] > side["min"] > 0.0

    def test_json_format(self, capsys):
        code, out = run(capsys, ["grid"] + BASE
                        + ["--nx", "2", "--nt", "2", "--format", "json"])
        assert code == 0
        rep = json.loads(out)
        assert len(rep["abs_p"]) == 2


class TestScan:
    def test_vary_c_monotone(self, capsys):
        code, out = run(capsys, ["scan", "--lambda0", "0", "--a", "3",
                                 "--b", "5", "--vary", "c", "--start", "5.5",
                                 "--stop", "7.0", "--num", "4"])
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "value,X,T,h_minus,h_plus"
        rows = [list(map(float, ln.split(","))) for ln in lines[1:]]
        xs = [r[1] for r in rows]
        # X increases as c decreases toward b: decreasing along increasing c
        assert xs == sorted(xs, reverse=True)

    def test_missing_vary_exit_2(self, capsys):
        code, _ = run(capsys, ["scan"] + BASE)
        assert code == 2


class TestVerify:
    def test_passes_at_reference(self, capsys):
        code, out = run(capsys, ["verify"] + BASE
                        + ["--nx", "128", "--nt", "128"])
        assert code == 0
        ledger = json.loads(out)
        assert ledger["residual"]["passed"]
        assert ledger["split_step"]["passed"]
        assert all(v["passed"] for v in ledger["symmetries"].values())

    def test_corruption_exit_1(self, capsys):
        code, out = run(capsys, ["verify"] + BASE
                        + ["--nx", "96", "--nt", "96", "--corrupt-k2"])
        assert code == 1
        ledger = json.loads(out)
        assert not ledger["residual"]["passed"]
        assert ledger["residual"]["residual_norm"] > 1e-4


class TestLimits:
    def test_a_to_0_report(self, capsys):
        code, out = run(capsys, ["limits", "--kind", "a_to_0", "--lambda0",
                                 "0", "--a", "0.001", "--b", "8",
                                 "--c", "9"])
        assert code == 0
        rep = json.loads(out)
        assert rep["integrals"]["a_plus"]["rel_err"] < 1e-5
        assert rep["derived"]["K2"] == pytest.approx(145.0)

    def test_missing_kind_exit_2(self, capsys):
        code, _ = run(capsys, ["limits"] + BASE)
        assert code == 2


class TestConfig:
    def test_config_file_with_flag_override(self, capsys, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps(
            {"a": 6, "b": 8, "c": 9, "nx": 3, "nt": 3}))
        code, out = run(capsys, ["grid", "--config", str(cfg), "--nt", "2"])
        assert code == 0
        lines = out.strip().splitlines()
        assert len(lines) == 1 + 3 * 2  # nx from config, nt from flag

    def test_missing_config_exit_3(self, capsys):
        code, _ = run(capsys, ["params", "--config", "/nonexistent.json"])
        assert code == 3

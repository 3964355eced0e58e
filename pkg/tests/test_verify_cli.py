"""Tests for the verification harness and command-line interface."""

import json
import math
import subprocess
import sys

import pytest

from maassl import cli, verify
from maassl.verify import (CheckReport, CheckSpec, default_suite, load_suite,
                           report_json, resolve_form, run_check, run_suite)


def run_cli(*args):
    proc = subprocess.run([sys.executable, "-m", "maassl.cli", *args],
                          capture_output=True, text=True)
    return proc.returncode, proc.stdout, proc.stderr


# ---------------------------------------------------------------------------
# form resolution
# ---------------------------------------------------------------------------

def test_resolve_builtin_forms():
    J = resolve_form("J")
    assert J.holo[1] == pytest.approx(196884)
    Jsq = resolve_form("Jsq")
    assert Jsq.holo[-2] == pytest.approx(1)


def test_resolve_synth_form():
    f = resolve_form('synth:{"k": -2, "holo": {"1": [2, -1]}, "nonholo": {"-1": 1}}')
    assert f.weight == -2
    assert f.holo[1] == 2 - 1j
    assert f.nonholo[-1] == 1


def test_resolve_unknown_form():
    with pytest.raises(ValueError):
        resolve_form("nope")


# ---------------------------------------------------------------------------
# run_check
# ---------------------------------------------------------------------------

def test_run_check_pass():
    rep = run_check(CheckSpec("zag", "prop_zag", "J", {}, 1e-7))
    assert rep.status == "pass"
    assert rep.abs_err < 1e-7
    assert rep.runtime_ms >= 0


def test_run_check_tolerance_gate():
    rep = run_check(CheckSpec("too-tight", "prop_zag", "J", {}, 1e-20))
    assert rep.status == "fail"


def test_run_check_skips_on_precondition():
    # Fricke side with Re w = 1 is below the admissibility threshold
    rep = run_check(CheckSpec("fe-bad", "prop_fe", "J",
                              {"s": 0, "w": [1, 5], "N": 1}, 1e-6))
    assert rep.status == "skipped"
    assert "precondition" in rep.message


def test_run_check_invalid_theorem():
    with pytest.raises(ValueError):
        CheckSpec("x", "not_a_theorem", "J")


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------

def test_default_suite_ids_unique():
    suite = default_suite()
    assert 30 <= len(suite) <= 80
    ids = [c.id for c in suite]
    assert len(set(ids)) == len(ids)


def test_run_suite_filter():
    reports, summary = run_suite(default_suite(), "prop_zag")
    assert len(reports) == 1
    assert summary["pass"] == 1


def test_empty_config(tmp_path):
    cfg = tmp_path / "empty.json"
    cfg.write_text('{"checks": []}')
    reports, summary = run_suite(load_suite(str(cfg)))
    assert reports == []
    assert summary == {"pass": 0, "fail": 0, "skipped": 0}


def test_config_parse_error_context(tmp_path):
    cfg = tmp_path / "bad.json"
    cfg.write_text('{"checks": [\n  {"oops"\n]}')
    with pytest.raises(ValueError, match=r"bad\.json:\d+"):
        load_suite(str(cfg))


def test_report_schema_and_determinism(tmp_path):
    checks = [CheckSpec("bend", "lemma_bend", "J",
                        {"a": 0.5, "w": [0, 1]}, 1e-6),
              CheckSpec("fe-skip", "prop_fe", "J",
                        {"s": 0, "w": [1, 0]}, 1e-6)]
    dicts = []
    for _ in range(2):
        reports, summary = run_suite(checks)
        d = report_json(reports, summary)
        for entry in d["checks"]:
            entry.pop("runtime_ms")
        dicts.append(json.dumps(d, sort_keys=True))
    assert dicts[0] == dicts[1]
    d = json.loads(dicts[0])
    required = {"id", "theorem", "lhs", "rhs", "abs_err", "rel_err",
                "lhs_err_est", "rhs_err_est", "status", "message"}
    for entry in d["checks"]:
        assert required <= set(entry)
        assert isinstance(entry["lhs"], list) and len(entry["lhs"]) == 2


def test_env_tolerance_override(monkeypatch):
    monkeypatch.setenv("MAASSL_TOL", "1e-1")
    spec = CheckSpec("loose", "prop_zag", "J")  # no explicit tolerance
    assert spec.effective_tolerance == 1e-1


# ---------------------------------------------------------------------------
# CLI
# ---------------------------------------------------------------------------

def test_cli_specfun_E():
    code, out, _ = run_cli("specfun", "E", "1", "--", "-6.2831853071795865")
    assert code == 0
    re_part, im_part = map(float, out.split())
    assert im_part == pytest.approx(-math.pi, abs=1e-10)


def test_cli_specfun_usage_error():
    code, _, err = run_cli("specfun", "E", "1")
    assert code == 2


def test_cli_unknown_subcommand():
    code, _, _ = run_cli("frobnicate")
    assert code == 2


def test_cli_coeffs_csv():
    code, out, _ = run_cli("coeffs", "J", "--prec", "5", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "n,re,im"
    rows = {int(l.split(",")[0]): float(l.split(",")[1]) for l in lines[1:]}
    assert rows[-1] == 1.0
    assert rows[1] == 196884.0
    assert rows[4] == 20245856256.0


def test_cli_coeffs_json():
    code, out, _ = run_cli("coeffs", "J", "--prec", "3", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["form"] == "J"
    assert [1, 196884.0, 0.0] in data["coefficients"]


def test_cli_lvalue_star():
    code, out, _ = run_cli("lvalue", "J", "--s", "0", "--star")
    assert code == 0
    re_part, im_part = map(float, out.split())
    assert im_part == pytest.approx(-math.pi, abs=1e-9)


def test_cli_verify_filter_and_report(tmp_path):
    report = tmp_path / "report.json"
    code, out, _ = run_cli("verify", "--filter", "prop_zag",
                           "--report", str(report))
    assert code == 0
    assert "PASS" in out
    data = json.loads(report.read_text())
    assert data["summary"]["fail"] == 0
    assert data["checks"][0]["id"] == "zag_J"


def test_cli_verify_failing_config_exit_code(tmp_path):
    cfg = tmp_path / "suite.json"
    cfg.write_text(json.dumps({"checks": [
        {"id": "impossible", "theorem": "prop_zag", "form": "J",
         "tolerance": 1e-20}]}))
    code, out, _ = run_cli("verify", "--config", str(cfg))
    assert code == 1
    assert "FAIL" in out


def test_main_callable_directly(capsys):
    assert cli.main(["specfun", "digamma", "1"]) == 0
    out = capsys.readouterr().out
    assert float(out.split()[0]) == pytest.approx(-0.5772156649015329, abs=1e-12)

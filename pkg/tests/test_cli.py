import json
import os
import subprocess
import sys

import pytest

from pretlab.cli import main

KRON5_JSON = '{"name":"kronecker","params":{"d":5}}'


def test_no_command_prints_help(capsys):
    assert main([]) == 64
    assert "usage:" in capsys.readouterr().err


def test_sum_liouville_oracle(capsys):
    assert main(["sum", "--function", "liouville", "--x", "1000000"]) == 0
    out = capsys.readouterr().out
    assert "S_0(1000000) = -530" in out


def test_sum_with_weight_and_rough_cut(capsys):
    assert main(["sum", "--function", "liouville", "--x", "1000", "--y", "10"]) == 0
    assert main(["sum", "--function", KRON5_JSON, "--x", "1000", "--k", "1"]) == 0


def test_sieve_counts(capsys):
    assert main(["sieve", "--limit", "1000"]) == 0
    assert "pi(1000) = 168" in capsys.readouterr().out


def test_distance_command(capsys):
    code = main(["distance", "--f", "liouville", "--g", KRON5_JSON,
                 "--y", "2", "--x", "10000"])
    assert code == 0
    assert "D^2 =" in capsys.readouterr().out


def test_lseries_window_and_plain(capsys):
    assert main(["lseries", "--function", "liouville", "--y", "30",
                 "--s", "1.5"]) == 0
    out1 = capsys.readouterr().out
    assert "0.9328659629" in out1
    assert main(["lseries", "--function", "liouville", "--y", "50",
                 "--s", "1.0", "--window"]) == 0
    assert "resolution" in capsys.readouterr().out


def test_lseries_window_rejects_complex_s(capsys):
    assert main(["lseries", "--function", "liouville", "--y", "30",
                 "--s", "1.5+1j", "--window"]) == 64


def test_lambda_command(capsys):
    assert main(["lambda", "--k", "1", "--limit", "100", "--n", "8"]) == 0
    out = capsys.readouterr().out
    assert "0.6931471805" in out  # log 2
    assert main(["lambda", "--k", "2", "--limit", "100", "--n", "101"]) == 64


def test_weights_command(capsys):
    assert main(["weights", "--y", "10", "--u", "2", "--scan", "10000"]) == 0
    out = capsys.readouterr().out
    assert "0 violations" in out


def test_verify_missing_param_is_usage_error(capsys):
    code = main(["verify", "--scenario", "thm12a_bound", "--function",
                 "liouville", "--A", "4", "--T", "10", "--x-grid", "100,1000"])
    assert code == 64
    err = capsys.readouterr().err
    assert "needs: Q" in err and "usage:" in err


def test_verify_bad_function_json(capsys):
    assert main(["verify", "--scenario", "halasz_bound", "--function",
                 "{broken", "--T", "10", "--x-grid", "100,1000"]) == 64


def test_verify_hypothesis_unmet_is_exit_2(capsys):
    prod = json.dumps({"name": "product", "params": {
        "left": {"name": "kronecker", "params": {"d": 5}},
        "right": {"name": "liouville"}}})
    code = main(["verify", "--scenario", "thm12b_zero", "--function", prod,
                 "--Q", "1000", "--A", "4", "--t0", "0",
                 "--x-grid", "2000000,4000000", "--truncation", "100000"])
    assert code == 2
    assert "hypothesis unmet" in capsys.readouterr().err


def test_verify_internal_error_is_exit_1(capsys):
    # a grid below Q^2 passes certification but fails the barrier domain:
    # domain errors map to exit 1, not usage (64) or hypothesis (2)
    code = main(["verify", "--scenario", "thm12a_bound", "--function",
                 KRON5_JSON, "--Q", "50", "--A", "4", "--T", "10",
                 "--x-grid", "1000,2000"])
    assert code == 1
    assert "exceeds x" in capsys.readouterr().err


def test_verify_unknown_catalog_name(capsys):
    assert main(["sum", "--function", "nope", "--x", "10"]) == 1
    assert "unknown catalog function" in capsys.readouterr().err


def test_verify_scenario_with_outputs(tmp_path, capsys):
    code = main(["verify", "--scenario", "distance_suite", "--seed", "3",
                 "--out", str(tmp_path)])
    assert code == 0
    out = capsys.readouterr().out
    summary = json.loads(out)
    assert summary["verdict"] == "consistent"
    assert os.path.exists(os.path.join(tmp_path, "distance_suite.csv"))


def test_verify_config_file_with_flag_override(tmp_path, capsys):
    cfg = {"scenario": "halasz_bound", "function": "liouville",
           "T": 10, "x_grid": [10000, 100000]}
    path = os.path.join(tmp_path, "c.json")
    with open(path, "w") as fh:
        json.dump(cfg, fh)
    code = main(["verify", "--config", path, "--T", "5"])
    assert code == 0
    summary = json.loads(capsys.readouterr().out)
    assert summary["scenario"] == "halasz_bound"
    assert summary["verdict"] == "consistent"


def test_console_script_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "pretlab", "sieve", "--limit", "100"],
        capture_output=True, text=True, timeout=60,
    )
    assert proc.returncode == 0
    assert "pi(100) = 25" in proc.stdout

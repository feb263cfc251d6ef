import hashlib
import json
import math
import os

import pytest

from pretlab.catalog import FunctionSpec, kronecker, liouville
from pretlab.distance import big_N, bound_exponent_B, halasz_M, q_sub_t
from pretlab.errors import (
    ArgumentError,
    HypothesisUnmetError,
    OutOfRangeError,
    UsageError,
)
from pretlab.harness import (
    DEFAULT_THRESHOLD,
    SCENARIOS,
    T_CAP,
    BoundReport,
    ExperimentConfig,
    _monitor_verdict,
    run_scenario,
    write_csv,
)

KRON5 = {"name": "kronecker", "params": {"d": 5}}


def _cfg(**kw) -> ExperimentConfig:
    return ExperimentConfig.from_obj(kw)


# --- config plumbing ---------------------------------------------------------


def test_config_rejects_unknown_keys():
    with pytest.raises(UsageError):
        _cfg(scenario="halasz_bound", function="liouville", T=10, x_grid=[10, 100],
             bogus_knob=1)


def test_config_missing_params_are_listed():
    cfg = _cfg(scenario="thm12a_bound", function="liouville", T=10,
               x_grid=[100, 1000])
    with pytest.raises(UsageError, match="Q") as exc:
        cfg.validate()
    assert "A" in str(exc.value)


def test_config_bare_string_and_dict_functions():
    a = _cfg(scenario="halasz_bound", function="liouville", T=5, x_grid=[10, 20])
    b = _cfg(scenario="halasz_bound", function=KRON5, T=5, x_grid=[10, 20])
    assert isinstance(a.function, FunctionSpec)
    assert a.function.name == "liouville"
    assert b.function.params == {"d": 5}


def test_config_scenario_membership():
    with pytest.raises(UsageError):
        _cfg(scenario="no_such_scenario", x_grid=[10, 20]).validate()
    assert "halasz_bound" in SCENARIOS and len(SCENARIOS) == 11


def test_config_grid_validation():
    with pytest.raises(UsageError):
        _cfg(scenario="halasz_bound", function="liouville", T=5, x_grid=[1, 10]).validate()
    with pytest.raises(UsageError):
        _cfg(scenario="halasz_bound", function="liouville", T=5, x_grid=[]).validate()
    with pytest.raises(UsageError):
        _cfg(scenario="distance_suite", threshold=-1.0).validate()


def test_config_file_roundtrip(tmp_path):
    path = os.path.join(tmp_path, "cfg.json")
    with open(path, "w") as fh:
        json.dump({"scenario": "halasz_bound", "function": "liouville",
                   "T": 10, "x_grid": [1000, 10000]}, fh)
    cfg = ExperimentConfig.from_file(path)
    cfg.validate()
    assert cfg.T == 10 and cfg.x_grid == [1000, 10000]


# --- verdict rule ------------------------------------------------------------


def test_monitor_verdict_bands():
    assert _monitor_verdict(60.0, 50.0) == "violated"
    assert _monitor_verdict(26.0, 50.0) == "inconclusive"
    assert _monitor_verdict(25.0, 50.0) == "consistent"
    assert _monitor_verdict(0.0, 50.0) == "consistent"
    assert DEFAULT_THRESHOLD == 50.0


# --- rhs formulas against hand-substituted calculator values ------------------


def test_halasz_rhs_formula():
    cfg = _cfg(scenario="halasz_bound", function="liouville", T=10.0,
               x_grid=[10**4, 10**5])
    report = run_scenario(cfg)["report"]
    for x, _lhs, rhs, _ratio in report.rows:
        m = halasz_M(liouville(), int(x), 10.0).value
        assert rhs == pytest.approx((m + 1) * math.exp(-m) + 0.1, rel=1e-12)


def test_thm12a_rhs_formula():
    Q, A, T = 10.0, 4.0, 10.0
    cfg = _cfg(scenario="thm12a_bound", function=KRON5, Q=Q, A=A, T=T,
               x_grid=[1000, 10000])
    report = run_scenario(cfg)["report"]
    B = bound_exponent_B(A)
    for x, _lhs, rhs, _ratio in report.rows:
        n_val = big_N(kronecker(5), int(x), T, Q, A).value
        expected = (n_val - math.log(math.log(Q))) ** 2 * (
            math.log(Q) / math.exp(n_val)
        ) ** B + 1.0 / T
        assert rhs == pytest.approx(expected, rel=1e-9)


def test_thm12b_rhs_formula_and_variant():
    Q, A = 10.0, 4.0
    cfg = _cfg(scenario="thm12b_zero", function="liouville", Q=Q, A=A, t0=0.0,
               x_grid=[10**4, 10**5])
    report = run_scenario(cfg)["report"]
    assert report.variant is not None
    logqt = math.log(q_sub_t(Q, A, 0.0))
    for (x, _l, rhs, _r), (xv, _lv, rhs_v, _rv) in zip(
        report.rows, report.variant.rows
    ):
        u = logqt / math.log(x)
        assert rhs == pytest.approx(u ** (A - 2), rel=1e-12)
        assert xv == x
        assert rhs_v == pytest.approx(u ** ((A - 2) / 2), rel=1e-12)


def test_thm16_rhs_formulas():
    cfg = _cfg(scenario="thm16_power", function=KRON5, Q=10.0,
               x_grid=[10**4, 10**5])
    report = run_scenario(cfg)["report"]
    eta = report.meta["eta"]
    for x, _l, rhs, _r in report.rows:
        expected = math.exp(-math.sqrt(math.log(x))) + x ** (-eta / math.log(10.0))
        assert rhs == pytest.approx(expected, rel=1e-9)
    for x, _l, rhs, _r in report.variant.rows:
        assert rhs == pytest.approx(x ** (-1.0 / (61.0 * math.log(10.0))), rel=1e-12)


# --- gates and domains ---------------------------------------------------------


def test_thm12a_gate_rejects_constant_one():
    cfg = _cfg(scenario="thm12a_bound",
               function={"name": "power_omega", "params": {"v": 1.0}},
               Q=10.0, A=4.0, T=10.0, x_grid=[1000, 10000])
    with pytest.raises(HypothesisUnmetError):
        run_scenario(cfg)


def test_thm12b_gate_rejects_nonvanishing_l():
    prod = {"name": "product", "params": {"left": KRON5, "right": {"name": "liouville"}}}
    cfg = _cfg(scenario="thm12b_zero", function=prod, Q=1000.0, A=4.0, t0=0.0,
               x_grid=[2 * 10**6, 4 * 10**6], truncation=10**5)
    with pytest.raises(HypothesisUnmetError, match="tolerance"):
        run_scenario(cfg)


def test_thm12a_requires_A_above_two():
    cfg = _cfg(scenario="thm12a_bound", function="liouville", Q=10.0, A=2.0,
               T=10.0, x_grid=[1000, 10000])
    with pytest.raises(ArgumentError):
        run_scenario(cfg)


def test_extremal_domain_enforced():
    spec = {"name": "interval_indicator", "params": {"y": 1000.0}}
    good = _cfg(scenario="example11_extremal", function=spec,
                x_grid=[1600, 1800, 2000])
    rep = run_scenario(good)["report"]
    assert rep.verdict == "consistent"
    assert rep.meta["identity_exact"]
    bad = _cfg(scenario="example11_extremal", function=spec, x_grid=[1400, 1900])
    with pytest.raises(OutOfRangeError):
        run_scenario(bad)


def test_t_cap_reported():
    cfg = _cfg(scenario="halasz_bound", function="liouville", T=10**9,
               x_grid=[1000, 10000])
    report = run_scenario(cfg)["report"]
    assert report.meta["T_capped"] and report.meta["T"] == T_CAP
    assert report.meta["T_requested"] == 10**9
    # a 2e6-wide t-window cannot be scanned at the natural 1/log x step
    assert report.meta["t_grid_coarsened"]
    assert report.meta["t_grid_step"] == pytest.approx(2 * T_CAP / 200_000)


# --- suites, outputs, determinism ---------------------------------------------


def test_lambda_suite_consistent():
    out = run_scenario(_cfg(scenario="lambda_suite", k=3, truncation=10**4))
    assert out["verdict"] == "consistent"


def test_outputs_written_and_csv_format(tmp_path):
    cfg = _cfg(scenario="halasz_bound", function="liouville", T=10.0,
               x_grid=[1000, 10000], out_dir=str(tmp_path))
    out = run_scenario(cfg)
    csv_path = os.path.join(tmp_path, "halasz_bound.csv")
    json_path = os.path.join(tmp_path, "halasz_bound_summary.json")
    assert csv_path in out["paths"] and json_path in out["paths"]
    raw = open(csv_path, "rb").read()
    assert b"\r" not in raw  # LF only
    lines = raw.decode().strip().split("\n")
    assert lines[0].startswith("x,")
    assert len(lines) == 3
    with open(json_path) as fh:
        summary = json.load(fh)
    assert summary["verdict"] in ("consistent", "inconclusive", "violated")
    assert summary["label"] == "halasz_bound"


def test_csv_17_digit_roundtrip(tmp_path):
    path = os.path.join(tmp_path, "t.csv")
    value = math.pi * 1e-7
    write_csv(path, ["a", "b"], [(3, value)])
    line = open(path).read().splitlines()[1]
    cell = line.split(",")[1]
    assert float(cell) == value  # 17 significant digits reproduce the double


def test_determinism_across_threads(tmp_path):
    digests = []
    for threads, sub in ((1, "a"), (8, "b")):
        cfg = _cfg(scenario="thm12b_zero", function="liouville", Q=10.0, A=4.0,
                   t0=0.0, x_grid=[10**4, 10**5, 10**6], threads=threads,
                   out_dir=os.path.join(tmp_path, sub))
        run_scenario(cfg)
        digest = hashlib.sha256(
            open(os.path.join(tmp_path, sub, "thm12b_zero.csv"), "rb").read()
        ).hexdigest()
        digests.append(digest)
    assert digests[0] == digests[1]


def test_siegel_suite_emits_profile(tmp_path):
    cfg = _cfg(scenario="siegel_suite", function=KRON5, Q=50.0,
               truncation=10**5, out_dir=str(tmp_path))
    out = run_scenario(cfg)
    names = {os.path.basename(p) for p in out["paths"]}
    assert "siegel_profile.csv" in names and "siegel_summary.json" in names
    prof_lines = open(os.path.join(tmp_path, "siegel_profile.csv")).read().splitlines()
    assert prof_lines[0] == "sigma,L"
    assert len(prof_lines) > 16


def test_report_serialization_nests_variant():
    rep = BoundReport(label="x", rows=[(1.0, 2.0, 3.0, 0.5)], max_ratio=0.5,
                      threshold=50.0, verdict="consistent",
                      variant=BoundReport(label="v", rows=[], max_ratio=0.0,
                                          threshold=50.0, verdict="consistent"))
    obj = rep.to_obj()
    assert obj["variant"]["label"] == "v"
    assert obj["rows"] == [[1.0, 2.0, 3.0, 0.5]]

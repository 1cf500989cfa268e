import os

import pytest

from rotorlab.cli import main
from rotorlab.reports import Report, RunConfig, load_config, render_reports


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_verify_tetrad_passes(capsys):
    code, out = run(capsys, "verify", "--suite", "tetrad", "--seed", "7")
    assert code == 0
    assert out.count("[check]") == 2
    assert "status = fail" not in out


def test_verify_unknown_suite(capsys):
    code = main(["verify", "--suite", "nope"])
    assert code == 2
    assert "unknown suite" in capsys.readouterr().err


def test_count_invariants_reports_counts(capsys):
    code, out = run(capsys, "count-invariants", "--seed", "5")
    assert code == 0
    assert "inputs.rank = 5" in out
    assert "inputs.nullity = 10" in out
    assert "inputs.zero_combos = 2" in out
    assert "inputs.functional_rank = 3" in out


def test_reports_byte_identical_for_same_seed(capsys):
    _, out1 = run(capsys, "verify", "--suite", "invariants", "--seed", "3")
    _, out2 = run(capsys, "verify", "--suite", "invariants", "--seed", "3")
    assert out1 == out2
    _, out3 = run(capsys, "verify", "--suite", "invariants", "--seed", "4")
    assert out1 != out3


def test_casimir_rotator(capsys):
    code, out = run(capsys, "casimir", "--f", "rotator", "--Q", "4")
    assert code == 0
    assert "inputs.PP = 0.99999999999999" in out or "inputs.PP = 1" in out
    assert "inputs.WW = -0.25" in out


def test_casimir_parse_error(capsys):
    code = main(["casimir", "--f", "1 + * Q"])
    assert code == 2
    assert "error:" in capsys.readouterr().err


def test_fundamental_check_nu_family(capsys):
    code, out = run(capsys, "fundamental-check", "--f", "nu_family",
                    "--nu", "0.5", "--grid", "8")
    assert code == 0
    assert "status = pass" in out


def test_hessian_rank_four(capsys):
    code, out = run(capsys, "hessian", "--f", "nu_family", "--nu", "0.3",
                    "--state", "random", "--seed", "3")
    assert code == 0
    assert "inputs.rank = 4" in out
    assert "inputs.singular = true" in out


def test_relation_consistency(capsys):
    code, out = run(capsys, "relation", "--states", "3", "--seed", "2")
    assert code == 0
    assert "status = pass" in out


def test_simulate_conservation(capsys):
    code, out = run(capsys, "simulate", "--f", "Q", "--periods", "3")
    assert code == 0
    assert "conservation-drift" in out
    assert "status = pass" in out


def test_simulate_degenerate_form_aborts(capsys):
    code = main(["simulate", "--f", "rotator"])
    assert code == 2
    assert "singular" in capsys.readouterr().err


def test_freemotion_writes_trajectory(tmp_path, capsys):
    out_file = os.path.join(tmp_path, "traj.csv")
    code, out = run(capsys, "freemotion", "--phase", "t", "--tmax", "10",
                    "--samples", "21", "--out", out_file)
    assert code == 0
    assert "status = fail" not in out
    lines = open(out_file).read().strip().split("\n")
    assert lines[0].startswith("t,x0")
    assert len(lines) == 22


def test_seed_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("ROTORLAB_SEED", "9")
    _, out = run(capsys, "count-invariants")
    assert "seed = 9" in out


def test_config_file_and_flag_override(tmp_path, capsys):
    cfg = os.path.join(tmp_path, "run.cfg")
    with open(cfg, "w") as fh:
        fh.write("seed = 4\ntolerance.el = 1e-7\n# comment\n")
    _, out = run(capsys, "freemotion", "--config", cfg, "--tmax", "3",
                 "--samples", "7")
    assert "seed = 4" in out
    assert "tolerance = 9.9999999999999995e-08" in out
    _, out = run(capsys, "freemotion", "--config", cfg, "--seed", "8",
                 "--tmax", "3", "--samples", "7")
    assert "seed = 8" in out


def test_report_out_file(tmp_path, capsys):
    path = os.path.join(tmp_path, "report.txt")
    _, out = run(capsys, "count-invariants", "--report-out", path)
    assert open(path).read() == out


def test_run_config_validation():
    with pytest.raises(ValueError):
        RunConfig(M=-1.0)
    cfg = RunConfig(tolerances={"el": 1e-7})
    assert cfg.tolerance("el", 1e-8) == 1e-7
    assert cfg.tolerance("other", 1e-8) == 1e-8


def test_report_status_rule():
    assert Report("x", 1e-12, 1e-10).status == "pass"
    assert Report("x", 1e-9, 1e-10).status == "fail"
    doc = render_reports([Report("x", 0.0, 1.0, 3, {"n": 2})])
    assert "name = x" in doc and "inputs.n = 2" in doc


def test_load_config_rejects_bad_lines(tmp_path):
    path = os.path.join(tmp_path, "bad.cfg")
    with open(path, "w") as fh:
        fh.write("not a key value line\n")
    with pytest.raises(ValueError):
        load_config(path)

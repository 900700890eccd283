import os
from fractions import Fraction

import orjson
import pytest

from Common.CEnum import PLATEAU_COLUMNS, TIMING_COLUMNS
from Common.IllusionException import CIllusionException, ErrCode
from main import EXIT_ERROR, EXIT_PASS, EXIT_VERIFY_FAILED, main
from Runner.Emit import emit_report
from Runner.ScenarioConfig import parse_scenario

ARTIFACTS = ("report.json", "timing.csv", "witness.json", "traces.json", "manifest.json")


def _write(path, obj):
    path.write_bytes(orjson.dumps(obj))
    return str(path)


def _load(path):
    return orjson.loads(path.read_bytes())


def _run(cfg_path, out, *extra):
    return main(["run", str(cfg_path), "--out", str(out), *extra])


def test_identity_caravan(tmp_path, scenario_dir):
    out = tmp_path / "out"
    assert _run(os.path.join(scenario_dir, "identity_caravan.json"), out) == EXIT_PASS
    for name in ARTIFACTS:
        assert (out / name).exists()
    report = _load(out / "report.json")
    assert report["pass"] is True
    assert report["measured_slowdown"] == 1
    assert report["report"]["per_step_residual"] == [0.0] * 101


@pytest.mark.parametrize("name", ["identity_disks.json", "identity_thirds.json", "caravan.json", "compose.json"])
def test_scenarios_pass_and_reverify(tmp_path, scenario_dir, name):
    out = tmp_path / "out"
    assert _run(os.path.join(scenario_dir, name), out) == EXIT_PASS
    assert main(["verify", str(out / "witness.json"), str(out / "traces.json")]) == EXIT_PASS


def test_compose_within_product(tmp_path, scenario_dir):
    out = tmp_path / "out"
    assert _run(os.path.join(scenario_dir, "compose.json"), out) == EXIT_PASS
    report = _load(out / "report.json")
    assert report["within_product"] is True
    assert report["outer_slowdown"] == 3


def test_tampered_trace_fails(tmp_path, scenario_dir):
    out = tmp_path / "out"
    assert _run(os.path.join(scenario_dir, "caravan.json"), out) == EXIT_PASS
    traces = _load(out / "traces.json")
    traces["primary"]["trace"]["states"][3][0] += 1.0
    bad = _write(tmp_path / "bad_traces.json", traces)
    assert main(["verify", str(out / "witness.json"), bad]) == EXIT_VERIFY_FAILED


def test_reruns_are_byte_identical(tmp_path, scenario_dir):
    cfg = os.path.join(scenario_dir, "caravan.json")
    assert _run(cfg, tmp_path / "a") == EXIT_PASS
    assert _run(cfg, tmp_path / "b") == EXIT_PASS
    for name in ARTIFACTS:
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_seed_override(tmp_path, scenario_dir):
    out = tmp_path / "out"
    assert _run(os.path.join(scenario_dir, "caravan.json"), out, "--seed", "99") == EXIT_PASS
    assert _load(out / "manifest.json")["seed"] == 99


def test_missing_seed(tmp_path, capsys):
    cfg = _write(tmp_path / "cfg.json", {"scenario": "identity", "horizon": 5})
    assert _run(cfg, tmp_path / "out") == EXIT_ERROR
    assert "seed" in capsys.readouterr().err


def test_invalid_json(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text('{"scenario": "identity",\n "seed": }')
    assert _run(cfg, tmp_path / "out") == EXIT_ERROR
    assert "line 2" in capsys.readouterr().err


def test_unknown_key(tmp_path, capsys):
    cfg = _write(tmp_path / "cfg.json", {"scenario": "identity", "seed": 1, "horizon": 5, "colour": "red"})
    assert _run(cfg, tmp_path / "out") == EXIT_ERROR
    assert "colour" in capsys.readouterr().err


def test_bad_parameters(tmp_path, capsys):
    cfg = _write(tmp_path / "cfg.json", {"scenario": "caravan", "seed": 1, "horizon": 5, "parameters": {"v_min": 2.0, "v_max": 1.0}})
    assert _run(cfg, tmp_path / "out") == EXIT_ERROR
    assert "CONFIG_ERROR" in capsys.readouterr().err


def test_bad_jobs(tmp_path, scenario_dir):
    assert _run(os.path.join(scenario_dir, "caravan.json"), tmp_path / "out", "--jobs", "0") == EXIT_ERROR


def test_parse_scenario_checks_seed_range():
    with pytest.raises(CIllusionException) as e:
        parse_scenario({"scenario": "squeeze", "seed": 2**64, "horizon": 4})
    assert e.value.errcode == ErrCode.CONFIG_ERROR
    assert parse_scenario({"scenario": "squeeze", "seed": 2**64 - 1, "horizon": 4}).seed == 2**64 - 1


def test_output_dir_from_env(tmp_path, scenario_dir, monkeypatch):
    monkeypatch.setenv("ILLUSION_OUTPUT_DIR", str(tmp_path / "env_out"))
    assert main(["run", os.path.join(scenario_dir, "identity_thirds.json")]) == EXIT_PASS
    assert (tmp_path / "env_out" / "report.json").exists()


def test_squeeze_csv(tmp_path):
    cfg = _write(tmp_path / "cfg.json", {"scenario": "squeeze", "seed": 0, "horizon": 16, "parameters": {"T_values": [1, 5]}})
    out = tmp_path / "out"
    assert _run(cfg, out) == EXIT_PASS
    header = (out / "timing.csv").read_text().splitlines()[0]
    assert header == ",".join(PLATEAU_COLUMNS)
    report = _load(out / "report.json")
    assert report["N_T"] == {"1": 1, "5": 3}
    assert report["lower_bound_holds"] is True


def test_coarsen_scenario(tmp_path):
    cfg = _write(tmp_path / "cfg.json", {
        "scenario": "coarsen", "seed": 4, "horizon": 10,
        "parameters": {"n": 4, "x0": [0.0, -60.0, 60.0, 120.0], "cases": 3},
    })
    out = tmp_path / "out"
    assert _run(cfg, out) == EXIT_PASS
    outcomes = _load(out / "report.json")["outcomes"]
    assert len(outcomes) == 9
    assert all(o["pass"] for o in outcomes)


def test_caravan_sweep_pool(tmp_path, scenario_dir):
    cfg = os.path.join(scenario_dir, "caravan_sweep.json")
    assert main(["sweep", cfg, "--out", str(tmp_path / "a")]) == EXIT_PASS
    assert main(["sweep", cfg, "--out", str(tmp_path / "b"), "--jobs", "2"]) == EXIT_PASS
    a = (tmp_path / "a" / "timing.csv").read_bytes()
    assert a == (tmp_path / "b" / "timing.csv").read_bytes()
    lines = a.decode().splitlines()
    assert lines[0] == ",".join(TIMING_COLUMNS + ["slowdown_bound", "pass"])
    assert len(lines) == 7


def test_disks_pool_matches_serial(tmp_path):
    cfg = _write(tmp_path / "cfg.json", {
        "scenario": "disks", "seed": 9, "horizon": 10,
        "parameters": {"trials": 2, "strategies": ["hungarian"], "robot_counts": [5]},
    })
    assert _run(cfg, tmp_path / "a") == EXIT_PASS
    assert _run(cfg, tmp_path / "b", "--jobs", "2") == EXIT_PASS
    assert (tmp_path / "a" / "timing.csv").read_bytes() == (tmp_path / "b" / "timing.csv").read_bytes()
    assert main(["verify", str(tmp_path / "a" / "witness.json"), str(tmp_path / "a" / "traces.json")]) == EXIT_PASS



def test_disks_trends_decide_the_exit_code(tmp_path, monkeypatch):
    cfg = _write(tmp_path / "cfg.json", {
        "scenario": "disks", "seed": 9, "horizon": 5,
        "parameters": {"trials": 1, "strategies": ["hungarian"], "robot_counts": [5]},
    })
    monkeypatch.setattr("Runner.Scenario.check_strategy_trends", lambda _summary: {"hungarian_non_decreasing": False})
    assert _run(cfg, tmp_path / "out") == EXIT_VERIFY_FAILED
    report = _load(tmp_path / "out" / "report.json")
    assert report["pass"] is False
    assert report["trends"] == {"hungarian_non_decreasing": False}


def test_emit_report(tmp_path):
    with pytest.raises(CIllusionException) as e:
        emit_report([], "csv", tmp_path / "empty.csv")
    assert e.value.errcode == ErrCode.EMPTY_RECORDS
    path = emit_report([{"a": Fraction(1, 3), "b": 0.1 + 0.2}], "csv", tmp_path / "r.csv")
    assert path.read_text() == "a,b\n1/3,0.3\n"
    path = emit_report([{"a": Fraction(1, 3), "b": 0.1 + 0.2}], "json", tmp_path / "r.json")
    assert orjson.loads(path.read_bytes()) == [{"a": "1/3", "b": 0.3}]

from fractions import Fraction
from multiprocessing import Pool
from pathlib import Path
from typing import List, Optional, Union

from Caravan.CaravanIllusion import caravan_dilation, caravan_illusion, caravan_slowdown_bound
from Caravan.CaravanParams import CCaravanParams
from Caravan.CaravanSystem import caravan_system
from Common.CEnum import DATA_FIELD, PLATEAU_COLUMNS, SCENARIO_TYPE, TIMING_COLUMNS
from Common.IllusionException import CIllusionException, ErrCode
from Common.func_util import fmt_value, trial_seed
from Disks.DiskParams import CDiskParams
from Disks.DiskSystem import disks_system
from Disks.Experiment import CExperimentConf, check_strategy_trends, run_illusion_experiment, run_illusion_trial, summarize_experiment
from Illusion.Construct import coarsen_run, compose_witness, identity_run
from Illusion.Report import CIllusionReport
from Illusion.Run import CIllusionRun
from Illusion.Verify import measure_slowdown
from Illusion.WitnessCodec import dump_witness
from IllusionConfig import CIllusionConfig
from Squeeze.SqueezeIllusion import find_N_T, plateau_records, squeeze_illusion
from Squeeze.SqueezeSystem import thirds_system
from System.Policy import constant_policy, seeded_policies

from .Emit import emit_report, write_json
from .Rebuild import traces_to_dict
from .ScenarioConfig import CaravanSetParams, ScenarioConfig, load_scenario
from .Settings import TOOL_VERSION, RunnerSettings


class CRunArtifacts:
    def __init__(self, out_dir: Path, report: CIllusionReport, summary: dict):
        self.out_dir = out_dir
        self.report = report
        self.summary = summary
        self.passed = bool(summary.get("pass", report.passed if report is not None else False))
        self.report_json = out_dir / "report.json"
        self.timing_csv = out_dir / "timing.csv"
        self.witness_json = out_dir / "witness.json"
        self.traces_json = out_dir / "traces.json"
        self.manifest = out_dir / "manifest.json"


def resolve_output_dir(cfg: ScenarioConfig, out: Optional[Union[str, Path]], conf: CIllusionConfig) -> Path:
    """--out, then ILLUSION_OUTPUT_DIR, then the config's output_dir, then output/<scenario>"""
    if out is not None:
        return Path(out)
    env_dir = RunnerSettings().OUTPUT_DIR
    if env_dir:
        if conf.print_warning:
            print(f"[WARNING-runner] output directory taken from ILLUSION_OUTPUT_DIR={env_dir}")
        return Path(env_dir)
    if cfg.output_dir:
        return Path(cfg.output_dir)
    return Path("output") / cfg.scenario.value


def _caravan_pair(p: CaravanSetParams, seed: int, horizon: int):
    x0 = p.x0 if p.x0 is not None else [p.spacing * i for i in range(p.n)]
    secondary = CCaravanParams(p.n, p.v_min, p.v_max, x0)
    primary = CCaravanParams(3, p.primary_v_min, p.primary_v_max)
    if p.policy == "max":
        policies = [constant_policy(p.v_max) for _ in range(p.n)]
    else:
        policies = seeded_policies(seed, p.n, lambda rng: float(rng.uniform(p.v_min, p.v_max)))
    return secondary, primary, policies


def _run_record(run: CIllusionRun, trial: int, label: str, seed: int) -> dict:
    plateaus = run.witness.timescale.plateau_lengths()
    return {
        DATA_FIELD.FIELD_TRIAL: trial,
        DATA_FIELD.FIELD_STRATEGY: label,
        DATA_FIELD.FIELD_N_PRIMARY: run.pri_system.n,
        DATA_FIELD.FIELD_SEC_STEPS: run.secondary_steps,
        DATA_FIELD.FIELD_PRI_STEPS: run.primary_steps,
        DATA_FIELD.FIELD_SLOWDOWN_MAX: max(plateaus) if plateaus else 0,
        DATA_FIELD.FIELD_SLOWDOWN_MEAN: sum(plateaus) / len(plateaus) if plateaus else 0.0,
        DATA_FIELD.FIELD_SEED: seed,
    }


def _identity(cfg: ScenarioConfig, params, conf: CIllusionConfig):
    seed = cfg.seed
    if params.system == "caravan":
        system = caravan_system(CCaravanParams(params.n, 0.0, 1.0, [10.0 * i for i in range(params.n)]), conf.d_far)
        policies = seeded_policies(seed, params.n, lambda rng: float(rng.uniform(0.0, 1.0)))
        eps = conf.eps_caravan
    elif params.system == "disks":
        dp = CDiskParams(params.n)
        system = disks_system(dp)
        policies = seeded_policies(seed, params.n, lambda rng: tuple(float(v) for v in rng.uniform(-dp.v_wheel_max, dp.v_wheel_max, size=2)))
        eps = conf.eps_disks_rel * dp.r
    else:
        system = thirds_system()
        policies = [constant_policy(Fraction(1, 3))]
        eps = conf.eps_exact
    run = identity_run(system, policies, max(1, cfg.horizon))
    report = run.verify(eps)
    summary = {"pass": report.passed and report.measured_slowdown == 1, "system": params.system, "measured_slowdown": report.measured_slowdown}
    return run, [_run_record(run, 0, "identity", seed)], summary


def _caravan(cfg: ScenarioConfig, params, conf: CIllusionConfig):
    secondary, primary, policies = _caravan_pair(params, cfg.seed, cfg.horizon)
    run = caravan_illusion(secondary, primary, policies, max(1, cfg.horizon), conf)
    bound = caravan_slowdown_bound(secondary, primary)
    tau = run.report.measured_slowdown
    summary = {"pass": run.report.passed, "measured_slowdown": tau, "slowdown_bound": bound, "within_bound": tau <= bound}
    return run, [_run_record(run, 0, "caravan", cfg.seed)], summary


def _compose(cfg: ScenarioConfig, params, conf: CIllusionConfig):
    secondary, primary, policies = _caravan_pair(params, cfg.seed, cfg.horizon)
    inner = caravan_illusion(secondary, primary, policies, max(1, cfg.horizon), conf)
    outer = caravan_dilation(inner, params.j, conf)
    witness = compose_witness(outer.witness, inner.witness)
    run = CIllusionRun(inner.sec_system, inner.sec_trace, outer.pri_system, outer.pri_trace, witness, m=1)
    report = run.verify(conf.eps_caravan)
    tau_in, tau_out = inner.report.measured_slowdown, outer.report.measured_slowdown
    summary = {
        "pass": report.passed and inner.report.passed and outer.report.passed,
        "inner_slowdown": tau_in,
        "outer_slowdown": tau_out,
        "measured_slowdown": report.measured_slowdown,
        "within_product": report.measured_slowdown <= tau_in * tau_out,
    }
    return run, [_run_record(run, 0, "compose", cfg.seed)], summary


def _coarsen(cfg: ScenarioConfig, params, conf: CIllusionConfig):
    records, outcomes = [], []
    first = None
    all_pass = True
    for case in range(params.cases):
        seed = trial_seed(cfg.seed, case)
        secondary, primary, policies = _caravan_pair(params, seed, cfg.horizon)
        base = caravan_illusion(secondary, primary, policies, max(1, cfg.horizon), conf)
        for kappa in params.kappas:
            run = coarsen_run(base, kappa)
            report = run.verify(conf.eps_caravan)
            preserved = report.passed or not base.report.passed
            all_pass = all_pass and preserved
            outcomes.append({"case": case, "kappa": kappa.value, "base_pass": base.report.passed, "pass": report.passed})
            records.append(_run_record(run, case, f"coarsen-{kappa.value}", seed))
            if first is None:
                first = run
    return first, records, {"pass": all_pass, "outcomes": outcomes}


def _squeeze(cfg: ScenarioConfig, params, conf: CIllusionConfig):
    run = squeeze_illusion(max(1, cfg.horizon), params.p_max, conf=conf)
    n_t = {str(T): find_N_T(T, params.p_max, conf) for T in params.T_values}
    rows = plateau_records(run)
    summary = {
        "pass": run.report.passed,
        "measured_slowdown": measure_slowdown(run.witness.timescale),
        "N_T": n_t,
        "lower_bound_holds": all(r["plateau_len"] >= r["lower_bound_floor_3h_2"] for r in rows),
    }
    return run, rows, summary


def _disks(cfg: ScenarioConfig, params, conf: CIllusionConfig, jobs: int = 1):
    exp = CExperimentConf(horizon=cfg.horizon, seed=cfg.seed, **params.model_dump())
    records = run_illusion_experiment(exp, conf, jobs)
    summary_df = summarize_experiment(records)
    trends = check_strategy_trends(summary_df)
    run = run_illusion_trial(exp, 0, exp.strategies[0], exp.robot_counts[0], conf)
    summary = {
        "pass": run.report.passed and all(trends.values()),
        "m_bound": exp.m_bound,
        "summary": summary_df.to_dict(orient="records"),
        "trends": trends,
    }
    return run, records, summary


HANDLERS = {
    SCENARIO_TYPE.IDENTITY: _identity,
    SCENARIO_TYPE.CARAVAN: _caravan,
    SCENARIO_TYPE.COMPOSE: _compose,
    SCENARIO_TYPE.COARSEN: _coarsen,
    SCENARIO_TYPE.SQUEEZE: _squeeze,
}


def _write_artifacts(cfg: ScenarioConfig, out_dir: Path, run: CIllusionRun, records: List[dict], summary: dict, columns) -> CRunArtifacts:
    report = run.report if run is not None else None
    art = CRunArtifacts(out_dir, report, summary)
    body = {"scenario": cfg.scenario.value, **summary}
    if report is not None:
        body["report"] = report.to_dict()
    write_json(fmt_value(body), art.report_json)
    emit_report(records, "csv", art.timing_csv, columns)
    if run is not None:
        dump_witness(run.witness, art.witness_json)
        write_json(traces_to_dict(run), art.traces_json)
    write_json({"tool": "illusion", "version": TOOL_VERSION, "seed": cfg.seed, "config": cfg.model_dump(mode="json")}, art.manifest)
    return art


def run_scenario(config_path: Union[str, Path], out: Optional[Union[str, Path]] = None, seed: Optional[int] = None, jobs: int = 1) -> CRunArtifacts:
    """
    load, run and write report.json, timing.csv, witness.json, traces.json, manifest.json
    raises VERIFICATION_FAILED (after writing) when the illusion check fails
    """
    cfg = load_scenario(config_path, seed)
    params = cfg.typed_parameters()
    conf = CIllusionConfig(cfg.engine)
    out_dir = resolve_output_dir(cfg, out, conf)
    columns = TIMING_COLUMNS
    if cfg.scenario == SCENARIO_TYPE.DISKS:
        run, records, summary = _disks(cfg, params, conf, jobs)
    else:
        run, records, summary = HANDLERS[cfg.scenario](cfg, params, conf)
        if cfg.scenario == SCENARIO_TYPE.SQUEEZE:
            columns = PLATEAU_COLUMNS
    art = _write_artifacts(cfg, out_dir, run, records, summary, columns)
    if not art.passed:
        step_idx = art.report.first_fail_step if art.report is not None else None
        broken = [k for k, ok in summary.get("trends", {}).items() if not ok]
        reason = f"strategy trends do not hold: {', '.join(broken)}" if broken else "illusion failed verification"
        raise CIllusionException(f"{cfg.scenario.value} {reason}", ErrCode.VERIFICATION_FAILED, step_idx=step_idx)
    return art


def _sweep_caravan_cell(cell) -> dict:
    set_dict, seed, horizon, conf_dict, idx = cell
    p = CaravanSetParams(**set_dict)
    conf = CIllusionConfig(conf_dict)
    secondary, primary, policies = _caravan_pair(p, seed, horizon)
    run = caravan_illusion(secondary, primary, policies, horizon, conf)
    rec = _run_record(run, idx, "caravan", seed)
    rec["slowdown_bound"] = caravan_slowdown_bound(secondary, primary)
    rec["pass"] = run.report.passed
    return rec


def run_sweep(config_path: Union[str, Path], out: Optional[Union[str, Path]] = None, seed: Optional[int] = None, jobs: int = 1) -> CRunArtifacts:
    """disks experiment grid, or every caravan parameter set, on a worker pool; one CSV"""
    cfg = load_scenario(config_path, seed)
    if cfg.scenario == SCENARIO_TYPE.DISKS:
        return run_scenario(config_path, out, seed, jobs)
    if cfg.scenario != SCENARIO_TYPE.CARAVAN:
        raise CIllusionException(f"sweep runs disks or caravan scenarios, got {cfg.scenario.value}", ErrCode.CONFIG_ERROR)
    params = cfg.typed_parameters()
    conf = CIllusionConfig(cfg.engine)
    out_dir = resolve_output_dir(cfg, out, conf)
    sets = params.param_sets or [CaravanSetParams(**params.model_dump(exclude={"param_sets"}))]
    cells = [(s.model_dump(), trial_seed(cfg.seed, idx), max(1, cfg.horizon), conf.to_dict(), idx) for idx, s in enumerate(sets)]
    if jobs > 1:
        with Pool(jobs) as pool:
            records = pool.map(_sweep_caravan_cell, cells)
    else:
        records = [_sweep_caravan_cell(c) for c in cells]
    passed = all(r["pass"] and r[DATA_FIELD.FIELD_SLOWDOWN_MAX] <= r["slowdown_bound"] for r in records)
    summary = {"pass": passed, "sets": len(records)}
    art = CRunArtifacts(out_dir, None, summary)
    write_json(fmt_value({"scenario": "caravan-sweep", **summary, "records": records}), art.report_json)
    emit_report(records, "csv", art.timing_csv, TIMING_COLUMNS + ["slowdown_bound", "pass"])
    write_json({"tool": "illusion", "version": TOOL_VERSION, "seed": cfg.seed, "config": cfg.model_dump(mode="json")}, art.manifest)
    if not passed:
        raise CIllusionException("caravan sweep exceeded the slowdown bound or failed verification", ErrCode.VERIFICATION_FAILED)
    return art

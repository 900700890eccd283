import math
from multiprocessing import Pool
from typing import Dict, List, Optional, Sequence

import pandas as pd

from Common.CEnum import ASSIGN_STRATEGY, DATA_FIELD, POLICY_KIND, TIMING_COLUMNS
from Common.IllusionException import CIllusionException, ErrCode
from Common.func_util import make_rng, trial_seed
from Illusion.RoleMap import CRoleMapSeq
from Illusion.Run import CIllusionRun
from Illusion.TimeScale import CTimeScale
from Illusion.Witness import CWitness
from IllusionConfig import CIllusionConfig
from System.Evolve import observe, replay, rollout, step
from System.Policy import CPolicy, replay_policies
from System.Trace import CTrace

from .Assignment import assign_roles, predict_upcoming
from .Controller import drive_to_targets
from .DiskParams import CDiskParams, CFieldParams, CSingleParams
from .DiskSystem import disks_system, single_system
from .Match import observation_match
from .ObstacleField import CObstacleField


class CExperimentConf:
    def __init__(
        self,
        trials: int = 10,
        strategies: Sequence[str] = ("naive", "hungarian", "heuristic"),
        robot_counts: Optional[Sequence[int]] = None,
        horizon: int = 200,
        seed: int = 0,
        r: float = 0.5,
        r_hat: Optional[float] = None,
        v_max: float = 0.1,
        dt: float = 0.2,
        v_wheel_max: float = 0.2,
        wheelbase: float = 0.1,
        robot_radius: float = 0.05,
        workspace: Sequence[float] = (-1.0, 1.0, -1.0, 1.0),
        spacing: float = 0.8,
    ):
        self.trials = int(trials)
        self.strategies = [ASSIGN_STRATEGY(s) if not isinstance(s, ASSIGN_STRATEGY) else s for s in strategies]
        self.horizon = int(horizon)
        self.seed = int(seed)
        self.r = float(r)
        self.r_hat = float(r if r_hat is None else r_hat)
        self.v_max = float(v_max)
        self.dt = float(dt)
        self.v_wheel_max = float(v_wheel_max)
        self.wheelbase = float(wheelbase)
        self.robot_radius = float(robot_radius)
        self.workspace = tuple(float(v) for v in workspace)
        self.spacing = float(spacing)
        self.m_bound = CFieldParams(self.spacing).m_bound(self.r)
        if robot_counts is None:
            robot_counts = range(self.m_bound + 1, self.m_bound + 6)
        self.robot_counts = [int(v) for v in robot_counts]
        self.check()

    def check(self):
        if self.trials < 1:
            raise CIllusionException(f"experiment needs at least one trial, got {self.trials}", ErrCode.NO_TRIALS)
        if self.horizon < 0:
            raise CIllusionException(f"horizon must be >= 0, got {self.horizon}", ErrCode.INVALID_HORIZON)
        if self.r_hat < self.r:
            raise CIllusionException(f"primary sensing range {self.r_hat} is smaller than the secondary's {self.r}", ErrCode.INVALID_PARAMS)
        for n_hat in self.robot_counts:
            if n_hat < self.m_bound + 1:
                raise CIllusionException(f"{n_hat} primary robots cannot cover {self.m_bound} visible obstacles plus the participant", ErrCode.INSUFFICIENT_ROBOTS)

    def to_dict(self) -> dict:
        return {
            "trials": self.trials,
            "strategies": [s.value for s in self.strategies],
            "robot_counts": list(self.robot_counts),
            "horizon": self.horizon,
            "seed": self.seed,
            "r": self.r,
            "r_hat": self.r_hat,
            "v_max": self.v_max,
            "dt": self.dt,
            "v_wheel_max": self.v_wheel_max,
            "wheelbase": self.wheelbase,
            "robot_radius": self.robot_radius,
            "workspace": list(self.workspace),
            "spacing": self.spacing,
        }


TURNS = [0.0] + [s * k * math.pi / 12 for k in range(1, 13) for s in (1, -1)]


def random_path_policy(seed: int, max_step: float, period: int, standoff: float = 0.0) -> CPolicy:
    """
    piecewise-constant velocity, heading and speed re-drawn every `period` steps;
    with a standoff the heading turns in 15 degree increments, alternating sides, until the step keeps
    that distance from every obstacle in view, and the robot waits when no heading does
    """
    def _clear(u, seen) -> bool:
        for o in seen:
            after = math.hypot(o[0] - u[0], o[1] - u[1])
            if after < standoff and after < math.hypot(o[0], o[1]):
                return False
        return True

    def _eval(u_hist, y_hist):
        rng = make_rng(seed, len(u_hist) // period)
        phi = float(rng.uniform(-math.pi, math.pi))
        speed = max_step * float(rng.uniform(0.5, 1.0))
        seen = y_hist[-1] if y_hist and standoff > 0 else ()
        for turn in TURNS:
            u = speed*math.cos(phi + turn), speed*math.sin(phi + turn)
            if _clear(u, seen):
                return u
        return 0.0, 0.0
    return CPolicy(_eval, POLICY_KIND.OWN_HISTORY, name=f"random_path(seed={seed},period={period},standoff={standoff:g})")


def _secondary_run(exp: CExperimentConf, trial: int, conf: CIllusionConfig):
    seed = trial_seed(exp.seed, trial)
    field = CObstacleField(CFieldParams(exp.spacing, seed))
    # two primary clearances: every role leaves room to pass the participant
    standoff = 4 * exp.robot_radius
    rng = make_rng(seed)
    start = rng.uniform(-exp.spacing, exp.spacing, size=2)
    while field.within((float(start[0]), float(start[1])), standoff):
        start = rng.uniform(-exp.spacing, exp.spacing, size=2)
    sec = single_system(CSingleParams(exp.r, exp.v_max, exp.dt, (float(start[0]), float(start[1]))), field)
    policy = random_path_policy(seed, exp.v_max * exp.dt, conf.path_period, standoff)
    trace = rollout(sec, [policy], exp.horizon) if exp.horizon > 0 else replay(sec, [])
    return seed, field, sec, trace


def run_illusion_trial(exp: CExperimentConf, trial: int, strategy: ASSIGN_STRATEGY, n_hat: int, conf: Optional[CIllusionConfig] = None) -> CIllusionRun:
    """
    participant 0 parked at the workspace center, complicit robots recast once per secondary step
    and driven until the participant sees what the single robot sees
    """
    if conf is None:
        conf = CIllusionConfig()
    seed, field, sec, sec_trace = _secondary_run(exp, trial, conf)
    params = CDiskParams(n_hat, exp.workspace, exp.v_wheel_max, exp.r_hat, exp.wheelbase, exp.dt, robot_radius=exp.robot_radius)
    pri = disks_system(params)
    eps = conf.eps_disks_rel * exp.r
    eps_pos = conf.eps_pos_rel * exp.r / 2  # an arrived robot must also pass the eps match
    margin = conf.park_margin_rel * exp.r_hat
    participant = pri.x0[0]

    pri_trace = CTrace(pri.name)
    x = pri.x0
    pri_trace.add_state(x, observe(pri, x))
    z = CTimeScale()
    for k in range(sec_trace.horizon + 1):
        desired = sec_trace.observations[k][0]
        upcoming = []
        if strategy == ASSIGN_STRATEGY.HEURISTIC:
            upcoming = predict_upcoming(field, [s[0] for s in sec_trace.states[:k+1]], exp.r, conf.lookahead)
            if not upcoming and conf.print_warning:
                print(f"[WARNING-disks] trial {trial} step {k}: no upcoming obstacle predicted")
        plan = assign_roles(x, desired, strategy, exp.r_hat, participant, exp.v_wheel_max, margin=margin, upcoming_rel=upcoming, clearance=params.clearance)
        plateau = 0
        while plateau == 0 and k > 0 or not observation_match(desired, pri_trace.observations[-1][0], eps)[0]:
            u = drive_to_targets(x, plan, params, eps_pos, conf.heading_tol, conf.heading_gain)
            x = step(pri, x, u)
            pri_trace.add_step(u, x, observe(pri, x))
            plateau += 1
            if plateau > conf.max_plateau:
                raise CIllusionException(f"{strategy.value} with {n_hat} robots stuck for {plateau} steps", ErrCode.PLATEAU_TIMEOUT, step_idx=k)
        z.append(pri_trace.horizon)
        if conf.print_info:
            print(f"[INFO-disks] trial={trial} {strategy.value} n={n_hat} k={k} plateau={plateau}")

    witness = CWitness(
        replay_policies(pri_trace),
        CRoleMapSeq.constant((0,), sec_trace.horizon),
        z,
        meta={"construction": "disks", "strategy": strategy.value, "trial": trial, "seed": seed},
    )
    run = CIllusionRun(sec, sec_trace, pri, pri_trace, witness, m=1)
    run.verify(eps)
    return run


def timing_record(run: CIllusionRun, trial: int, strategy: ASSIGN_STRATEGY, n_hat: int, seed: int) -> dict:
    plateaus = run.witness.timescale.plateau_lengths()
    return {
        DATA_FIELD.FIELD_TRIAL: trial,
        DATA_FIELD.FIELD_STRATEGY: strategy.value,
        DATA_FIELD.FIELD_N_PRIMARY: n_hat,
        DATA_FIELD.FIELD_SEC_STEPS: run.secondary_steps,
        DATA_FIELD.FIELD_PRI_STEPS: run.primary_steps,
        DATA_FIELD.FIELD_SLOWDOWN_MAX: max(plateaus) if plateaus else 0,
        DATA_FIELD.FIELD_SLOWDOWN_MEAN: sum(plateaus) / len(plateaus) if plateaus else 0.0,
        DATA_FIELD.FIELD_SEED: seed,
    }


def _run_cell(cell) -> dict:
    exp_dict, conf_dict, trial, strategy, n_hat = cell
    exp = CExperimentConf(**exp_dict)
    conf = CIllusionConfig(conf_dict)
    strategy = ASSIGN_STRATEGY(strategy)
    run = run_illusion_trial(exp, trial, strategy, n_hat, conf)
    if not run.report.passed:
        raise CIllusionException(f"trial {trial} {strategy.value} n={n_hat} failed verification", ErrCode.VERIFICATION_FAILED, step_idx=run.report.first_fail_step)
    return timing_record(run, trial, strategy, n_hat, trial_seed(exp.seed, trial))


def run_illusion_experiment(exp: CExperimentConf, conf: Optional[CIllusionConfig] = None, jobs: int = 1) -> List[dict]:
    """one timing record per (trial, strategy, n_hat), in that order whatever the pool size"""
    if conf is None:
        conf = CIllusionConfig()
    cells = [
        (exp.to_dict(), conf.to_dict(), trial, strategy.value, n_hat)
        for trial in range(exp.trials)
        for strategy in exp.strategies
        for n_hat in exp.robot_counts
    ]
    if jobs > 1:
        with Pool(jobs) as pool:
            return pool.map(_run_cell, cells)
    return [_run_cell(cell) for cell in cells]


def summarize_experiment(records: List[dict]) -> pd.DataFrame:
    if not records:
        raise CIllusionException("no timing records to summarize", ErrCode.EMPTY_RECORDS)
    df = pd.DataFrame(records, columns=TIMING_COLUMNS)
    summary = df.groupby([DATA_FIELD.FIELD_STRATEGY, DATA_FIELD.FIELD_N_PRIMARY], sort=True).agg(
        mean_primary_steps=(DATA_FIELD.FIELD_PRI_STEPS, "mean"),
        mean_slowdown_max=(DATA_FIELD.FIELD_SLOWDOWN_MAX, "mean"),
        mean_slowdown_mean=(DATA_FIELD.FIELD_SLOWDOWN_MEAN, "mean"),
        trials=(DATA_FIELD.FIELD_TRIAL, "count"),
    )
    return summary.reset_index()


def _monotone(values: Sequence[float], increasing: bool, rel_tol: float = 0.02) -> bool:
    """monotone up to a single inversion no larger than rel_tol"""
    inversions = []
    for a, b in zip(values, values[1:]):
        bad = b < a if increasing else b > a
        if bad:
            inversions.append(abs(b - a) / max(abs(a), 1e-12))
    return len(inversions) == 0 or (len(inversions) == 1 and inversions[0] <= rel_tol)


def check_strategy_trends(summary: pd.DataFrame) -> Dict[str, bool]:
    """
    ordering naive >= hungarian >= heuristic at every robot count,
    heuristic non-increasing and hungarian non-decreasing in the robot count
    """
    steps = summary.pivot(index=DATA_FIELD.FIELD_N_PRIMARY, columns=DATA_FIELD.FIELD_STRATEGY, values="mean_primary_steps").sort_index()
    res = {}
    if {"naive", "hungarian"} <= set(steps.columns):
        res["naive_ge_hungarian"] = bool((steps["naive"] >= steps["hungarian"]).all())
    if {"hungarian", "heuristic"} <= set(steps.columns):
        res["hungarian_ge_heuristic"] = bool((steps["hungarian"] >= steps["heuristic"]).all())
    if "heuristic" in steps.columns:
        res["heuristic_non_increasing"] = _monotone(list(steps["heuristic"]), increasing=False)
    if "hungarian" in steps.columns:
        res["hungarian_non_decreasing"] = _monotone(list(steps["hungarian"]), increasing=True)
    return res

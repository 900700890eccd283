import math
from fractions import Fraction
from typing import List, Optional, Tuple

from Common.IllusionException import CIllusionException, ErrCode
from Illusion.RoleMap import CRoleMapSeq
from Illusion.Run import CIllusionRun
from Illusion.TimeScale import CTimeScale
from Illusion.Witness import CWitness
from IllusionConfig import CIllusionConfig
from System.Evolve import observe, rollout, step
from System.Policy import CPolicy, constant_policy, replay_policies
from System.Trace import CTrace

from .Chase import binary_chase
from .Sensor import chase_tolerance, h_sqz
from .SqueezeSystem import binary_system, thirds_system


def _dither(x_hat: Fraction, p_max: int) -> Fraction:
    # one finest step that keeps the reading, so z stays strictly increasing
    obs = h_sqz(x_hat)
    tick = Fraction(1, 2**p_max)
    for u in (tick, -tick):
        if x_hat + u >= 0 and h_sqz(x_hat + u) == obs:
            return u
    raise CIllusionException(f"no observation-preserving dither from {x_hat}", ErrCode.CHASE_PRECISION)


def squeeze_illusion(horizon: int, p_max: Optional[int] = None, policy: Optional[CPolicy] = None, conf: Optional[CIllusionConfig] = None) -> CIllusionRun:
    """binary system chasing a thirds robot, one greedy chase per secondary step, verified with eps 0"""
    if conf is None:
        conf = CIllusionConfig()
    if p_max is None:
        p_max = conf.p_max
    if policy is None:
        policy = constant_policy(Fraction(1, 3))
    sec = thirds_system()
    pri = binary_system(p_max)
    sec_trace = rollout(sec, [policy], horizon)

    pri_trace = CTrace(pri.name)
    x_hat = pri.x0
    pri_trace.add_state(x_hat, observe(pri, x_hat))
    z = CTimeScale([0])
    for k in range(1, horizon+1):
        target = sec_trace.states[k][0]
        steps = binary_chase(target, x_hat[0], chase_tolerance(target), p_max)
        if not steps:
            steps = [_dither(x_hat[0], p_max)]
        if len(steps) > conf.max_plateau:
            raise CIllusionException(f"chase of {len(steps)} steps exceeds plateau cap {conf.max_plateau}", ErrCode.PLATEAU_TIMEOUT, step_idx=k)
        for u in steps:
            x_hat = step(pri, x_hat, (u,))
            pri_trace.add_step((u,), x_hat, observe(pri, x_hat))
        z.append(pri_trace.horizon)
        if conf.print_info:
            print(f"[INFO-squeeze] k={k} target={target} plateau={len(steps)}")

    witness = CWitness(replay_policies(pri_trace), CRoleMapSeq.identity(1, horizon), z, meta={"construction": "squeeze", "p_max": p_max})
    run = CIllusionRun(sec, sec_trace, pri, pri_trace, witness, m=1)
    run.verify(conf.eps_exact)
    return run


def first_exceeding_step(T: int, p_max: Optional[int] = None, conf: Optional[CIllusionConfig] = None) -> Tuple[int, int]:
    """smallest secondary step k >= 1 whose plateau z(k+1) - z(k) exceeds T"""
    if T < 1:
        raise CIllusionException(f"T must be >= 1, got {T}", ErrCode.PARA_ERROR)
    max_horizon = 3 * (math.ceil(2*T/3) + 3) + 2
    horizon = 8
    while True:
        horizon = min(horizon, max_horizon)
        plateaus = squeeze_illusion(horizon, p_max, conf=conf).witness.timescale.plateau_lengths()
        for k in range(1, len(plateaus)):
            if plateaus[k] > T:
                return k, plateaus[k]
        if horizon == max_horizon:
            raise CIllusionException(f"no plateau above {T} within {max_horizon} secondary steps", ErrCode.BOUND_VIOLATED)
        horizon *= 2


def find_N_T(T: int, p_max: Optional[int] = None, conf: Optional[CIllusionConfig] = None) -> int:
    """
    smallest block count h >= 1 such that a plateau among secondary steps 1..3h+1 exceeds T,
    checked against the ceil(2T/3) + 3 bound
    """
    k, _ = first_exceeding_step(T, p_max, conf)
    n_t = max(1, math.ceil((k-1) / 3))
    bound = math.ceil(2*T/3) + 3
    if n_t > bound:
        raise CIllusionException(f"N_T={n_t} exceeds {bound} for T={T}", ErrCode.BOUND_VIOLATED)
    return n_t


def plateau_records(run: CIllusionRun) -> List[dict]:
    """one row per block h: the plateau entering stripe 3h+2"""
    z = run.witness.timescale
    plateaus = z.plateau_lengths()
    rows = []
    h = 1
    while 3*h + 1 < len(plateaus):
        k = 3*h + 1
        x_hat = run.pri_trace.states[z[k]][0]
        rows.append({
            "h": h,
            "secondary_step": k,
            "plateau_len": plateaus[k],
            "lower_bound_floor_3h_2": (3*h) // 2,
            "state_num": x_hat.numerator,
            "state_den": x_hat.denominator,
        })
        h += 1
    return rows

import math
from typing import List, Optional, Sequence

from Common.CEnum import POLICY_KIND, SENTINEL
from Common.IllusionException import CIllusionException, ErrCode
from Illusion.RoleMap import CRoleMapSeq
from Illusion.Run import CIllusionRun
from Illusion.TimeScale import CTimeScale
from Illusion.Witness import CWitness
from IllusionConfig import CIllusionConfig
from System.Evolve import observe, rollout, step
from System.Policy import CPolicy, constant_policy, replay_policies
from System.Trace import CTrace

from .CaravanParams import CCaravanParams
from .CaravanSystem import caravan_observe, caravan_system, neighbour_switch_steps


def caravan_slowdown_bound(secondary: CCaravanParams, primary: CCaravanParams) -> int:
    return math.ceil(2 * secondary.v_range / primary.v_range)


def _clamp(v, lo, hi):
    return lo if v < lo else hi if v > hi else v


def _target_offset(v, d_far: float, k: Optional[int] = None) -> float:
    if v == SENTINEL.INF:
        return d_far
    if v >= d_far:
        raise CIllusionException(f"offset {v} is beyond the parking distance {d_far}", ErrCode.UNREACHABLE_OFFSET, step_idx=k)
    return v


def _fold(start: float, steps) -> float:
    # same left-to-right sum the transition x + u performs
    for u in steps:
        start = start + u
    return start


def caravan_chase_policies(pri_params: CCaravanParams, d_far: float) -> List[CPolicy]:
    """
    the three-robot chase law as cross-system policies:
    robot 0 cruises at the mid speed, robots 1 and 2 steer their gap to robot 0 toward the
    behind/ahead offsets robot 0 of the caravan reads in the latest secondary state
    """
    lo, hi = pri_params.v_min, pri_params.v_max
    c = (lo + hi) / 2
    x0 = pri_params.x0

    def _lead(t: int) -> float:
        return _fold(x0[0], [c] * t)

    def _behind(u_hist, _y_hist, sec_hist):
        b_tgt = _target_offset(caravan_observe(sec_hist[-1], 0).b, d_far)
        e_b = _lead(len(u_hist)) - _fold(x0[1], u_hist)
        return _clamp(e_b + c - b_tgt, lo, hi)

    def _ahead(u_hist, _y_hist, sec_hist):
        a_tgt = _target_offset(caravan_observe(sec_hist[-1], 0).a, d_far)
        e_a = _fold(x0[2], u_hist) - _lead(len(u_hist))
        return _clamp(a_tgt - e_a + c, lo, hi)

    return [
        constant_policy(c),
        CPolicy(_behind, POLICY_KIND.CROSS_SYSTEM, name="chase_behind"),
        CPolicy(_ahead, POLICY_KIND.CROSS_SYSTEM, name="chase_ahead"),
    ]


def _check_reachable(e, tgt, half_range: float, side: str, k: int, conf: CIllusionConfig):
    need = math.ceil(abs(tgt - e) / half_range)
    if need > conf.max_plateau:
        raise CIllusionException(
            f"{side} offset jumps from {e:g} to {tgt:g} at step {k} (a neighbour appeared or left): "
            f"closing it takes {need} primary steps, max_plateau is {conf.max_plateau}",
            ErrCode.UNREACHABLE_OFFSET,
            step_idx=k,
        )


def caravan_illusion(
    secondary: CCaravanParams,
    primary: CCaravanParams,
    secondary_policies: Sequence[CPolicy],
    horizon: int,
    conf: Optional[CIllusionConfig] = None,
) -> CIllusionRun:
    """
    three-robot primary emulating robot 0 of any caravan:
    robot 0 cruises at the mid speed, robot 1 chases the behind offset, robot 2 the ahead offset,
    z(k) is recorded once both offsets match
    a neighbour switch turns an offset into d_far (or back); when that gap cannot close within
    max_plateau steps the run stops with UNREACHABLE_OFFSET instead of chasing it
    """
    if conf is None:
        conf = CIllusionConfig()
    if primary.n != 3:
        raise CIllusionException(f"the caravan illusion uses exactly 3 primary robots, got {primary.n}", ErrCode.INVALID_PARAMS)
    d_far, eps = conf.d_far, conf.eps_caravan

    sec = caravan_system(secondary, d_far)
    sec_trace = rollout(sec, secondary_policies, horizon)
    if conf.print_warning:
        switches = neighbour_switch_steps(sec_trace, 0)
        if switches:
            print(f"[WARNING-caravan] participant neighbour changes at steps {switches}, the slowdown bound does not apply there")

    y0 = sec_trace.observations[0][0]
    b0, a0 = _target_offset(y0.b, d_far, 0), _target_offset(y0.a, d_far, 0)
    pri_params = CCaravanParams(3, primary.v_min, primary.v_max, (0.0, -b0, a0))
    pri = caravan_system(pri_params, d_far)
    policies = caravan_chase_policies(pri_params, d_far)
    half_range = pri_params.v_range / 2

    pri_trace = CTrace(pri.name)
    x = pri.x0
    pri_trace.add_state(x, observe(pri, x))
    u_hist = [[] for _ in range(3)]
    y_hist = [[y_i] for y_i in pri_trace.observations[0]]
    sec_hist = []
    z = CTimeScale([0])
    for k in range(1, horizon+1):
        y = sec_trace.observations[k][0]
        b_tgt, a_tgt = _target_offset(y.b, d_far, k), _target_offset(y.a, d_far, k)
        _check_reachable(x[0] - x[1], b_tgt, half_range, "behind", k, conf)
        _check_reachable(x[2] - x[0], a_tgt, half_range, "ahead", k, conf)
        plateau = 0
        while True:
            sec_hist.append(sec_trace.states[k])
            u = tuple(policies[i].act(x[i], u_hist[i], y_hist[i], sec_hist) for i in range(3))
            x = step(pri, x, u)
            y_hat = observe(pri, x)
            pri_trace.add_step(u, x, y_hat)
            for i in range(3):
                u_hist[i].append(u[i])
                y_hist[i].append(y_hat[i])
            plateau += 1
            if sec.obs_distance(y, y_hat[0]) <= eps:
                break
            if plateau >= conf.max_plateau:
                raise CIllusionException(f"offsets not matched after {plateau} primary steps", ErrCode.PLATEAU_TIMEOUT, step_idx=k)
        z.append(pri_trace.horizon)

    witness = CWitness(
        policies,
        CRoleMapSeq.constant((0,), horizon),
        z,
        meta={"construction": "caravan", "slowdown_bound": caravan_slowdown_bound(secondary, pri_params)},
    )
    run = CIllusionRun(sec, sec_trace, pri, pri_trace, witness, m=1)
    run.verify(eps)
    return run


def caravan_dilation(middle: CIllusionRun, j: int, conf: Optional[CIllusionConfig] = None) -> CIllusionRun:
    """
    a caravan with its speed range divided by j emulates every robot of another caravan:
    each action u is replayed as j steps of u/j, so z(k) = j*k
    `middle` is any run whose primary is a caravan; the dilation emulates that primary
    """
    if conf is None:
        conf = CIllusionConfig()
    if j < 1:
        raise CIllusionException(f"dilation factor must be >= 1, got {j}", ErrCode.PARA_ERROR)
    mid_sys, mid_trace = middle.pri_system, middle.pri_trace
    meta = mid_sys.meta
    mid_params = CCaravanParams(mid_sys.n, meta["v_min"], meta["v_max"], mid_sys.x0)
    top_params = CCaravanParams(mid_sys.n, mid_params.v_min / j, mid_params.v_max / j, mid_sys.x0)
    top = caravan_system(top_params, conf.d_far)

    top_trace = CTrace(top.name)
    x = top.x0
    top_trace.add_state(x, observe(top, x))
    lo, hi = top_params.v_min, top_params.v_max
    for k, u in enumerate(mid_trace.actions):
        u_top = tuple(v / j for v in u)
        for sub in range(j):
            if sub == j-1:
                # land on the middle state so rounding does not pile up over blocks
                u_top = tuple(_clamp(mid_trace.states[k+1][i] - x[i], lo, hi) for i in range(top.n))
            x = step(top, x, u_top)
            top_trace.add_step(u_top, x, observe(top, x))

    horizon = mid_trace.horizon
    witness = CWitness(
        replay_policies(top_trace),
        CRoleMapSeq.identity(mid_sys.n, horizon),
        CTimeScale(j * k for k in range(horizon+1)),
        meta={"construction": "dilation", "j": j},
    )
    run = CIllusionRun(mid_sys, mid_trace, top, top_trace, witness, m=mid_sys.n)
    run.verify(conf.eps_caravan)
    return run

from typing import List, Optional, Sequence

from Common.IllusionException import CIllusionException, ErrCode

from .Policy import CPolicy
from .SystemDef import CSystem
from .Trace import CTrace


def _check_dim(system: CSystem, joint, what: str):
    try:
        cnt = len(joint)
    except TypeError as e:
        raise CIllusionException(f"{what} for {system.name} is not a joint tuple", ErrCode.DIMENSION_MISMATCH) from e
    if cnt != system.n:
        raise CIllusionException(f"{what} for {system.name} has {cnt} components, expected {system.n}", ErrCode.DIMENSION_MISMATCH)


def step(system: CSystem, state, action) -> tuple:
    _check_dim(system, state, "state")
    _check_dim(system, action, "action")
    for i, u in enumerate(action):
        if not system.action_valid(i, u):
            raise CIllusionException(f"action {u!r} invalid in {system.name}", ErrCode.INVALID_ACTION, robot_idx=i)
    nxt = tuple(system.robot_transition(state, i, action[i]) for i in range(system.n))
    if system.state_valid is not None:
        for i, x_i in enumerate(nxt):
            if not system.state_valid(i, x_i):
                raise CIllusionException(f"action {action[i]!r} leaves the state space of {system.name}", ErrCode.INVALID_ACTION, robot_idx=i)
    return nxt


def observe(system: CSystem, state) -> tuple:
    _check_dim(system, state, "state")
    return tuple(system.robot_observe(state, i) for i in range(system.n))


def _step_at(system: CSystem, x, u, k: int):
    try:
        return step(system, x, u)
    except CIllusionException as e:
        if e.errcode == ErrCode.INVALID_ACTION:
            e.step_idx = k
        raise


def rollout(system: CSystem, policies: Sequence[CPolicy], horizon: int, sec_states: Optional[Sequence] = None) -> CTrace:
    """
    closed-loop run of the policies; sec_states, when given, holds one secondary state per step
    (see CTimeScale.stretch) and step k hands cross-system policies the entries 0..k
    """
    if horizon < 1:
        raise CIllusionException(f"horizon must be >= 1, got {horizon}", ErrCode.INVALID_HORIZON)
    if len(policies) != system.n:
        raise CIllusionException(f"{len(policies)} policies for {system.n} robots of {system.name}", ErrCode.DIMENSION_MISMATCH)
    if sec_states is not None and len(sec_states) < horizon:
        raise CIllusionException(f"{len(sec_states)} secondary states for {horizon} steps", ErrCode.INSUFFICIENT_DATA)

    trace = CTrace(system.name)
    x = system.x0
    y = observe(system, x)
    trace.add_state(x, y)
    u_hist: List[list] = [[] for _ in range(system.n)]
    y_hist: List[list] = [[y[i]] for i in range(system.n)]
    sec_hist = None if sec_states is None else []
    for k in range(horizon):
        if sec_hist is not None:
            sec_hist.append(sec_states[k])
        u = tuple(policies[i].act(x[i], u_hist[i], y_hist[i], sec_hist) for i in range(system.n))
        x = _step_at(system, x, u, k)
        y = observe(system, x)
        trace.add_step(u, x, y)
        for i in range(system.n):
            u_hist[i].append(u[i])
            y_hist[i].append(y[i])
    return trace


def replay(system: CSystem, actions: Sequence, x0=None) -> CTrace:
    """rebuild a trace from x0 and a recorded action sequence, no actions gives a single-state trace"""
    trace = CTrace(system.name)
    x = system.x0 if x0 is None else tuple(x0)
    trace.add_state(x, observe(system, x))
    for k, u in enumerate(actions):
        x = _step_at(system, x, tuple(u), k)
        trace.add_step(tuple(u), x, observe(system, x))
    return trace

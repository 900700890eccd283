import math
from typing import List

from Common.CEnum import ARITH_MODE, SENTINEL
from Common.IllusionException import CIllusionException, ErrCode
from System.SystemDef import CSystem
from System.Trace import CTrace

from .CaravanParams import CCaravanObs, CCaravanParams

DEFAULT_D_FAR = 1e6


def caravan_observe(x, i) -> CCaravanObs:
    behind = [x[i] - x[j] for j in range(len(x)) if x[j] < x[i]]
    ahead = [x[j] - x[i] for j in range(len(x)) if x[j] > x[i]]
    return CCaravanObs(
        min(behind) if behind else SENTINEL.INF,
        min(ahead) if ahead else SENTINEL.INF,
    )


def _component_distance(v, v_hat, d_far: float) -> float:
    if v == v_hat:
        return 0.0
    v_inf, v_hat_inf = isinstance(v, SENTINEL), isinstance(v_hat, SENTINEL)
    if v_inf and v_hat_inf:
        return math.inf
    if v_inf or v_hat_inf:
        # a robot parked d_far away stands in for "nobody on that side"
        finite = v_hat if v_inf else v
        return max(0.0, d_far - finite)
    return abs(v - v_hat)


def make_caravan_distance(d_far: float = DEFAULT_D_FAR):
    def _dist(y, y_hat) -> float:
        if y is None or y_hat is None or isinstance(y, (int, float)) or isinstance(y_hat, (int, float)):
            return 0.0 if y == y_hat else math.inf
        return max(_component_distance(v, v_hat, d_far) for v, v_hat in zip(y, y_hat))
    return _dist


def caravan_system(params: CCaravanParams, d_far: float = DEFAULT_D_FAR) -> CSystem:
    if params.x0 is None:
        raise CIllusionException("caravan system needs initial positions", ErrCode.INVALID_PARAMS)
    v_min, v_max = params.v_min, params.v_max

    def _valid(_i, u):
        return isinstance(u, (int, float)) and not isinstance(u, bool) and v_min <= u <= v_max

    return CSystem(
        name=f"caravan{params.n}",
        n=params.n,
        robot_transition=lambda x, i, u: x[i] + u,
        robot_observe=caravan_observe,
        action_valid=_valid,
        x0=params.x0,
        arith_mode=ARITH_MODE.FLOAT,
        obs_distance=make_caravan_distance(d_far),
        state_desc="R",
        meta={"kind": "caravan", **params.to_dict(), "d_far": d_far},
    )


def _neighbours(x, i):
    behind = [j for j in range(len(x)) if x[j] < x[i]]
    ahead = [j for j in range(len(x)) if x[j] > x[i]]
    return (
        min(behind, key=lambda j: x[i] - x[j]) if behind else None,
        min(ahead, key=lambda j: x[j] - x[i]) if ahead else None,
    )


def neighbour_switch_steps(trace: CTrace, robot_idx: int = 0) -> List[int]:
    """steps k at which robot_idx's nearest behind/ahead robot differs from step k-1"""
    res = []
    prev = None
    for k, x in enumerate(trace.states):
        cur = _neighbours(x, robot_idx)
        if prev is not None and cur != prev:
            res.append(k)
        prev = cur
    return res

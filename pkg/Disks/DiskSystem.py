import math

from Common.CEnum import ARITH_MODE
from Common.IllusionException import CIllusionException, ErrCode
from System.SystemDef import CSystem

from .DiskParams import CDiskParams, CFieldParams, CSingleParams
from .Geometry import clamp_to_workspace, unicycle_step
from .Match import observation_match
from .ObstacleField import CObstacleField

SPEED_TOL = 1e-12


def _is_pair(u) -> bool:
    try:
        return len(u) == 2 and all(isinstance(v, (int, float)) and not isinstance(v, bool) and math.isfinite(v) for v in u)
    except TypeError:
        return False


def list_obs_distance(y, y_hat) -> float:
    return observation_match(y, y_hat, 0.0)[1]


def default_ring_poses(params: CDiskParams, participant_idx: int = 0, ring_radius: float = None):
    """participant at the workspace center, everyone else evenly spaced on a ring facing inward"""
    cx, cy = params.center
    if ring_radius is None:
        ring_radius = params.r * 1.1
    others = [i for i in range(params.n) if i != participant_idx]
    poses = [None] * params.n
    poses[participant_idx] = (cx, cy, 0.0)
    for cnt, i in enumerate(others):
        ang = 2*math.pi*cnt / len(others)
        poses[i] = (cx + ring_radius*math.cos(ang), cy + ring_radius*math.sin(ang), math.atan2(-math.sin(ang), -math.cos(ang)))
    return tuple(poses)


def disks_system(params: CDiskParams) -> CSystem:
    x0 = params.x0 if params.x0 is not None else default_ring_poses(params)
    vmax, wb, dt, ws, r = params.v_wheel_max, params.wheelbase, params.dt, params.workspace, params.r

    def _valid(_i, u):
        return _is_pair(u) and abs(u[0]) <= vmax + SPEED_TOL and abs(u[1]) <= vmax + SPEED_TOL

    def _transition(x, i, u):
        return clamp_to_workspace(unicycle_step(x[i], u[0], u[1], wb, dt), ws)

    def _observe(x, i):
        xi, yi = x[i][0], x[i][1]
        res = []
        for j, pose in enumerate(x):
            if j != i and math.hypot(pose[0] - xi, pose[1] - yi) <= r:
                res.append((pose[0] - xi, pose[1] - yi))
        return tuple(res)

    return CSystem(
        name=f"disks{params.n}",
        n=params.n,
        robot_transition=_transition,
        robot_observe=_observe,
        action_valid=_valid,
        x0=x0,
        arith_mode=ARITH_MODE.FLOAT,
        obs_distance=list_obs_distance,
        state_desc="W x S1",
        meta={"kind": "disks", **params.to_dict(), "x0": [list(p) for p in x0]},
    )


def single_system(params: CSingleParams, field: CObstacleField) -> CSystem:
    step_max, r = params.max_step, params.r
    if not isinstance(field, CObstacleField):
        raise CIllusionException("single system needs an obstacle field", ErrCode.INVALID_PARAMS)

    def _valid(_i, u):
        return _is_pair(u) and math.hypot(u[0], u[1]) <= step_max + SPEED_TOL

    def _observe(x, i):
        px, py = x[i]
        return tuple((ox - px, oy - py) for ox, oy in field.within((px, py), r))

    return CSystem(
        name="single",
        n=1,
        robot_transition=lambda x, i, u: (x[i][0] + u[0], x[i][1] + u[1]),
        robot_observe=_observe,
        action_valid=_valid,
        x0=(params.x0,),
        arith_mode=ARITH_MODE.FLOAT,
        obs_distance=list_obs_distance,
        state_desc="R2",
        meta={"kind": "single", **params.to_dict(), "field": field.params.to_dict()},
    )


def single_system_from_meta(meta: dict) -> CSystem:
    field = CObstacleField(CFieldParams(**meta["field"]))
    return single_system(CSingleParams(meta["r"], meta["v_max"], meta["dt"], meta["x0"]), field)

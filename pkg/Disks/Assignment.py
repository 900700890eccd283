import math
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from Common.CEnum import ASSIGN_STRATEGY
from Common.IllusionException import CIllusionException, ErrCode
from Common.func_util import wrap_angle

from .Geometry import dist, radial_projection
from .Hungarian import hungarian_solve

Point = Tuple[float, float]


class CAssignmentPlan:
    """
    onstage: role index -> (robot index, absolute target)
    offstage: robot index -> parking target
    cost: summed lower bound on travel time, distance / v_wheel_max
    center, r_sense, margin: the participant's sensing disk offstage robots are routed around (None: straight)
    """
    def __init__(self, participant_idx: int = 0, center: Optional[Point] = None, r_sense: float = 0.0, margin: float = 0.0):
        self.participant_idx = participant_idx
        self.center = center
        self.r_sense = r_sense
        self.margin = margin
        self.onstage: Dict[int, Tuple[int, Point]] = {}
        self.offstage: Dict[int, Point] = {}
        self.cost = 0.0

    def targets(self) -> Dict[int, Point]:
        res = {robot: tgt for robot, tgt in self.onstage.values()}
        res.update(self.offstage)
        return res

    def robot_of_role(self, role: int) -> int:
        return self.onstage[role][0]

    def __repr__(self):
        roles = {k: v[0] for k, v in self.onstage.items()}
        return f"CAssignmentPlan(onstage={roles}, offstage={sorted(self.offstage)}, cost={self.cost:.4g})"


def parking_target(pos, center, r_sense: float, margin: float, fallback_angle: float = 0.0) -> Point:
    """nearest spot outside the participant's sensing disk: stay if already out, else radial projection"""
    if dist(pos, center) > r_sense + margin / 2:
        return pos[0], pos[1]
    return radial_projection(pos, center, r_sense + margin, fallback_angle)


def ring_distance(p, q, center) -> float:
    """length of the way around the disk: radial legs plus the arc at the outer radius"""
    rp, rq = dist(p, center), dist(q, center)
    arc = abs(wrap_angle(math.atan2(q[1] - center[1], q[0] - center[0]) - math.atan2(p[1] - center[1], p[0] - center[0])))
    return abs(rp - rq) + arc * max(rp, rq)


def free_spot(pref, center, ring: float, taken: Sequence[Point], gap: float) -> Point:
    """pref if it keeps gap from every taken point, else the nearest such spot on the ring around center"""
    def _free(p):
        return all(dist(p, q) >= gap for q in taken)

    if gap <= 0 or _free(pref):
        return pref
    psi = math.atan2(pref[1] - center[1], pref[0] - center[0])
    step = gap / (2*ring)
    for k in range(1, int(math.pi / step) + 1):
        for s in (1, -1):
            cand = center[0] + ring*math.cos(psi + s*k*step), center[1] + ring*math.sin(psi + s*k*step)
            if _free(cand):
                return cand
    return pref


def _fallback_angle(robot_idx: int, n: int) -> float:
    return 2 * math.pi * robot_idx / max(1, n)


def assign_roles(
    primary_state: Sequence,
    desired_rel: Sequence[Point],
    strategy: ASSIGN_STRATEGY,
    r_sense: float,
    participant_pose,
    v_wheel_max: float,
    participant_idx: int = 0,
    margin: Optional[float] = None,
    upcoming_rel: Sequence[Point] = (),
    clearance: float = 0.0,
) -> CAssignmentPlan:
    """
    cast the non-participant robots onto the desired relative positions;
    upcoming_rel are predicted obstacle positions (relative) the heuristic pre-positions spare robots toward;
    offstage spots keep 2*clearance from the roles and from each other, lower robot index placed first
    """
    if margin is None:
        margin = 0.1 * r_sense
    robots = [i for i in range(len(primary_state)) if i != participant_idx]
    if len(robots) < len(desired_rel):
        raise CIllusionException(f"{len(desired_rel)} roles for {len(robots)} complicit robots", ErrCode.INSUFFICIENT_ROBOTS)
    center = (participant_pose[0], participant_pose[1])
    roles = [(center[0] + dx, center[1] + dy) for dx, dy in desired_rel]
    pos = {i: (primary_state[i][0], primary_state[i][1]) for i in robots}
    park = {i: parking_target(pos[i], center, r_sense, margin, _fallback_angle(i, len(primary_state))) for i in robots}

    plan = CAssignmentPlan(participant_idx, center, r_sense, margin)
    if strategy == ASSIGN_STRATEGY.NAIVE:
        order = sorted(range(len(roles)), key=lambda k: (roles[k][0], roles[k][1]))
        for robot, role in zip(robots, order):
            plan.onstage[role] = (robot, roles[role])
    elif strategy in (ASSIGN_STRATEGY.HUNGARIAN, ASSIGN_STRATEGY.HEURISTIC):
        n_park = len(robots) - len(roles)
        cost = np.zeros((len(robots), len(roles) + n_park))
        for a, robot in enumerate(robots):
            for k, tgt in enumerate(roles):
                cost[a, k] = dist(pos[robot], tgt) / v_wheel_max
            cost[a, len(roles):] = dist(pos[robot], park[robot]) / v_wheel_max
        assignment, _ = hungarian_solve(cost)
        for a, col in enumerate(assignment):
            if col < len(roles):
                plan.onstage[col] = (robots[a], roles[col])
    else:
        raise CIllusionException(f"unknown strategy {strategy}", ErrCode.PARA_ERROR)

    cast = {robot for robot, _ in plan.onstage.values()}
    spare = [i for i in robots if i not in cast]
    wanted = {i: park[i] for i in spare}
    ring = r_sense + margin
    if strategy == ASSIGN_STRATEGY.HEURISTIC and spare and upcoming_rel:
        slots = [radial_projection((center[0] + dx, center[1] + dy), center, ring) for dx, dy in upcoming_rel[:len(spare)]]
        cost = np.array([[ring_distance(pos[i], s, center) / v_wheel_max for s in slots] for i in spare])
        assignment, _ = hungarian_solve(cost)
        for a, col in enumerate(assignment):
            if col >= 0:
                wanted[spare[a]] = slots[col]
    taken = list(roles)
    for i in spare:
        plan.offstage[i] = free_spot(wanted[i], center, ring, taken, 2*clearance)
        taken.append(plan.offstage[i])

    plan.cost = sum(dist(pos[robot], tgt) for robot, tgt in plan.onstage.values()) / v_wheel_max
    plan.cost += sum(dist(pos[i], tgt) for i, tgt in plan.offstage.items()) / v_wheel_max
    return plan


def predict_upcoming(field, sec_states: Sequence, r: float, lookahead: int) -> List[Point]:
    """
    obstacles the single robot is about to see, relative to its current position:
    within 2r but not yet within r, nearest to the path extrapolated from the last displacement first
    """
    cur = sec_states[-1]
    prev = sec_states[-2] if len(sec_states) > 1 else cur
    d = (cur[0] - prev[0], cur[1] - prev[1])
    path = [(cur[0] + l*d[0], cur[1] + l*d[1]) for l in range(1, lookahead+1)]
    cand = [o for o in field.within(cur, 2*r) if dist(o, cur) > r]
    cand.sort(key=lambda o: (min(dist(o, p) for p in path), o))
    return [(o[0] - cur[0], o[1] - cur[1]) for o in cand]

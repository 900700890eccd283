import math
from typing import Dict, List, Sequence, Tuple

from Common.func_util import wrap_angle

from .Assignment import CAssignmentPlan
from .DiskParams import CDiskParams
from .Geometry import dist, point_segment_distance, radial_projection, unicycle_step

Point = Tuple[float, float]
ZERO = (0.0, 0.0)
DETOUR_MARGIN = 1.2  # times clearance, tangent offset around a stationary robot
DETOUR_LOOK = 3.0  # times clearance, how far ahead the straight path is checked


def go_to_goal(pose, target, params: CDiskParams, eps_pos: float, heading_tol: float, heading_gain: float = 1.0) -> Tuple[float, float]:
    """
    rotate in place while the target is more than heading_tol off the nose,
    otherwise follow the arc that ends on the target (gain 1 lands it exactly when the wheels allow)
    """
    vmax, wb, dt = params.v_wheel_max, params.wheelbase, params.dt
    dx, dy = target[0] - pose[0], target[1] - pose[1]
    d = math.hypot(dx, dy)
    if d <= eps_pos:
        return ZERO
    alpha = wrap_angle(math.atan2(dy, dx) - pose[2])
    if abs(alpha) > heading_tol:
        w = max(-vmax, min(vmax, alpha * wb / (2*dt)))
        return -w, w
    omega = heading_gain * 2 * alpha / dt
    chord = alpha / math.sin(alpha) if abs(alpha) > 1e-9 else 1.0
    v = min(vmax, d * chord / dt)
    vl, vr = v - omega*wb/2, v + omega*wb/2
    peak = max(abs(vl), abs(vr))
    if peak > vmax:
        vl, vr = vl * vmax / peak, vr * vmax / peak
    return vl, vr


def _blocks(q, a, b, clearance: float) -> bool:
    """q lies ahead of the move a -> b and within clearance of it"""
    ax, ay = b[0] - a[0], b[1] - a[1]
    if ax*ax + ay*ay < 1e-18:
        return False
    if (q[0] - a[0])*ax + (q[1] - a[1])*ay <= 0:
        return False
    return point_segment_distance(q, a, b) < clearance


def ring_waypoint(pos, goal, center, r_sense: float, margin: float, clearance: float) -> Point:
    """
    next waypoint of an offstage robot that never cuts through the sensing disk:
    leave it radially, step out to a lane beyond the parking ring, follow the lane, come straight in
    """
    r_safe = r_sense + margin / 2
    park = r_sense + margin
    keep, lane = park + clearance, park + 2*clearance
    if point_segment_distance(center, pos, goal) >= r_safe:
        return goal[0], goal[1]
    rho = dist(pos, center)
    if rho < r_safe:
        return radial_projection(pos, center, park)
    if rho < keep - clearance / 2:
        return radial_projection(pos, center, lane)
    psi = math.atan2(pos[1] - center[1], pos[0] - center[0])
    gap = wrap_angle(math.atan2(goal[1] - center[1], goal[0] - center[0]) - psi)
    side = 1.0 if gap >= 0 else -1.0
    floor = min(keep, rho) - 1e-9
    delta = min(abs(gap), math.pi / 2)
    while delta > 1e-3:
        w = center[0] + lane*math.cos(psi + side*delta), center[1] + lane*math.sin(psi + side*delta)
        if point_segment_distance(center, pos, w) >= floor:
            return w
        delta /= 2
    return radial_projection(pos, center, lane)


def _tangent_detour(pos, goal, blocker, clearance: float, outward=None) -> Point:
    """waypoint along the tangent to the blocker's clearance circle, on the side nearer the goal"""
    d = dist(pos, blocker)
    to_q = math.atan2(blocker[1] - pos[1], blocker[0] - pos[0])
    ratio = DETOUR_MARGIN * clearance / d if d > 0 else math.inf
    # inside the margin: step slightly away rather than along the tangent
    beta = math.asin(ratio) if ratio < 1 else math.pi / 2 + 0.1
    to_goal = wrap_angle(math.atan2(goal[1] - pos[1], goal[0] - pos[0]) - to_q)
    if abs(to_goal) > 1e-9:
        side = 1.0 if to_goal > 0 else -1.0
    elif outward is not None:
        # head-on: pass on the side away from the sensing disk
        side = 1.0 if wrap_angle(math.atan2(pos[1] - outward[1], pos[0] - outward[0]) - to_q) > 0 else -1.0
    else:
        side = 1.0
    phi = to_q + side*beta
    look = max(d, 2*clearance)
    return pos[0] + look*math.cos(phi), pos[1] + look*math.sin(phi)


def drive_to_targets(
    state: Sequence,
    plan: CAssignmentPlan,
    params: CDiskParams,
    eps_pos: float,
    heading_tol: float = math.pi / 8,
    heading_gain: float = 1.0,
) -> tuple:
    """
    joint wheel speeds toward the plan's targets, participant held still, in index order:
    a robot halts when a lower-index robot (moving or not) is ahead within clearance of its forward segment,
    a stationary lower-index robot on the straight path is bypassed along its clearance circle,
    offstage robots travel outside the sensing disk when the plan carries the disk
    """
    targets: Dict[int, tuple] = plan.targets()
    c = params.clearance
    actions = []
    occupied: List[Point] = []  # lower-index robots: current positions, plus next positions of movers
    still: List[Point] = []
    for i, pose in enumerate(state):
        here = (pose[0], pose[1])
        u = ZERO
        if i != plan.participant_idx and i in targets:
            goal = targets[i]
            routed = i in plan.offstage and plan.center is not None
            if routed:
                goal = ring_waypoint(here, goal, plan.center, plan.r_sense, plan.margin, c)
            look = goal
            if dist(here, goal) > DETOUR_LOOK * c:
                look = _toward(here, goal, DETOUR_LOOK * c)
            blockers = [q for q in still if _blocks(q, here, look, DETOUR_MARGIN * c) and dist(q, goal) >= c]
            if blockers:
                q = min(blockers, key=lambda p: dist(p, here))
                goal = _tangent_detour(here, goal, q, c, plan.center if routed else None)
            u = go_to_goal(pose, goal, params, eps_pos, heading_tol, heading_gain)
            if u != ZERO:
                nxt = unicycle_step(pose, u[0], u[1], params.wheelbase, params.dt)
                if any(_blocks(q, here, nxt, c) for q in occupied):
                    u = ZERO
        actions.append(u)
        occupied.append(here)
        if u == ZERO:
            still.append(here)
        else:
            nxt = unicycle_step(pose, u[0], u[1], params.wheelbase, params.dt)
            occupied.append((nxt[0], nxt[1]))
    return tuple(actions)


def _toward(a, b, length: float) -> Point:
    d = dist(a, b)
    return a[0] + (b[0] - a[0])*length/d, a[1] + (b[1] - a[1])*length/d

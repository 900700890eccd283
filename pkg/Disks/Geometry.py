import math
from typing import Sequence, Tuple

from Common.func_util import wrap_angle

Pose = Tuple[float, float, float]


def unicycle_step(pose: Pose, vl: float, vr: float, wheelbase: float, dt: float) -> Pose:
    """exact arc integration of a differential drive over dt"""
    x, y, th = pose
    v = (vl + vr) / 2
    w = (vr - vl) / wheelbase
    if abs(w) < 1e-12:
        return x + v*dt*math.cos(th), y + v*dt*math.sin(th), th
    R = v / w
    th_new = th + w*dt
    return x + R*(math.sin(th_new) - math.sin(th)), y - R*(math.cos(th_new) - math.cos(th)), wrap_angle(th_new)


def clamp_to_workspace(pose: Pose, workspace: Sequence[float]) -> Pose:
    xmin, xmax, ymin, ymax = workspace
    return min(max(pose[0], xmin), xmax), min(max(pose[1], ymin), ymax), pose[2]


def dist(p, q) -> float:
    return math.hypot(p[0] - q[0], p[1] - q[1])


def point_segment_distance(p, a, b) -> float:
    ax, ay = b[0] - a[0], b[1] - a[1]
    seg2 = ax*ax + ay*ay
    if seg2 == 0:
        return dist(p, a)
    t = ((p[0] - a[0])*ax + (p[1] - a[1])*ay) / seg2
    t = min(1.0, max(0.0, t))
    return math.hypot(p[0] - (a[0] + t*ax), p[1] - (a[1] + t*ay))


def radial_projection(p, center, radius: float, fallback_angle: float = 0.0) -> Tuple[float, float]:
    dx, dy = p[0] - center[0], p[1] - center[1]
    d = math.hypot(dx, dy)
    if d < 1e-12:
        return center[0] + radius*math.cos(fallback_angle), center[1] + radius*math.sin(fallback_angle)
    return center[0] + radius*dx/d, center[1] + radius*dy/d

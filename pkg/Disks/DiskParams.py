import math
from typing import Optional, Sequence, Tuple

from Common.IllusionException import CIllusionException, ErrCode


class CDiskParams:
    """differential-drive disk robots in an axis-aligned workspace (xmin, xmax, ymin, ymax)"""
    def __init__(
        self,
        n: int,
        workspace: Sequence[float] = (-1.0, 1.0, -1.0, 1.0),
        v_wheel_max: float = 0.2,
        r: float = 0.5,
        wheelbase: float = 0.1,
        dt: float = 0.2,
        x0: Optional[Sequence[Sequence[float]]] = None,
        robot_radius: float = 0.05,
    ):
        self.n = int(n)
        self.workspace: Tuple[float, float, float, float] = tuple(float(v) for v in workspace)
        self.v_wheel_max = float(v_wheel_max)
        self.r = float(r)
        self.wheelbase = float(wheelbase)
        self.dt = float(dt)
        self.robot_radius = float(robot_radius)
        self.x0 = None if x0 is None else tuple(tuple(float(v) for v in pose) for pose in x0)
        self.check()

    def check(self):
        if self.n < 1:
            raise CIllusionException(f"disk system needs at least one robot, got {self.n}", ErrCode.INVALID_PARAMS)
        if len(self.workspace) != 4:
            raise CIllusionException(f"workspace must be (xmin, xmax, ymin, ymax), got {self.workspace}", ErrCode.INVALID_PARAMS)
        xmin, xmax, ymin, ymax = self.workspace
        if xmax - xmin < 2*self.r or ymax - ymin < 2*self.r:
            raise CIllusionException(f"workspace {self.workspace} cannot hold a disk of radius {self.r}", ErrCode.INVALID_PARAMS)
        if self.v_wheel_max <= 0 or self.r <= 0 or self.wheelbase <= 0 or self.dt <= 0 or self.robot_radius < 0:
            raise CIllusionException("v_wheel_max, r, wheelbase and dt must be positive", ErrCode.INVALID_PARAMS)
        if self.x0 is not None:
            if len(self.x0) != self.n:
                raise CIllusionException(f"x0 has {len(self.x0)} poses for {self.n} robots", ErrCode.INVALID_PARAMS)
            if any(len(pose) != 3 for pose in self.x0):
                raise CIllusionException("disk poses are (x, y, theta)", ErrCode.INVALID_PARAMS)

    @property
    def center(self) -> Tuple[float, float]:
        xmin, xmax, ymin, ymax = self.workspace
        return (xmin + xmax) / 2, (ymin + ymax) / 2

    @property
    def clearance(self) -> float:
        return 2 * self.robot_radius

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "workspace": list(self.workspace),
            "v_wheel_max": self.v_wheel_max,
            "r": self.r,
            "wheelbase": self.wheelbase,
            "dt": self.dt,
            "robot_radius": self.robot_radius,
            "x0": None if self.x0 is None else [list(p) for p in self.x0],
        }


class CSingleParams:
    """point robot in an obstacle field, per-step displacement bounded by v_max*dt"""
    def __init__(self, r: float = 0.5, v_max: float = 0.1, dt: float = 0.2, x0: Sequence[float] = (0.0, 0.0)):
        self.r = float(r)
        self.v_max = float(v_max)
        self.dt = float(dt)
        self.x0 = tuple(float(v) for v in x0)
        if self.r <= 0 or self.v_max <= 0 or self.dt <= 0:
            raise CIllusionException("r, v_max and dt must be positive", ErrCode.INVALID_PARAMS)
        if len(self.x0) != 2:
            raise CIllusionException(f"single robot position is (x, y), got {self.x0}", ErrCode.INVALID_PARAMS)

    @property
    def max_step(self) -> float:
        return self.v_max * self.dt

    def to_dict(self) -> dict:
        return {"r": self.r, "v_max": self.v_max, "dt": self.dt, "x0": list(self.x0)}


class CFieldParams:
    """jittered square grid: one obstacle per cell of side `spacing`, offset at most spacing/4 per axis"""
    def __init__(self, spacing: float = 0.8, seed: int = 0):
        self.spacing = float(spacing)
        self.seed = int(seed)
        if self.spacing <= 0:
            raise CIllusionException(f"obstacle spacing must be positive, got {spacing}", ErrCode.INVALID_PARAMS)

    @property
    def jitter(self) -> float:
        return self.spacing / 4

    def m_bound(self, r: float) -> int:
        per_axis = math.floor(2 * (r + self.jitter) / self.spacing) + 1
        return per_axis * per_axis

    @property
    def min_separation(self) -> float:
        return self.spacing - 2*self.jitter

    def to_dict(self) -> dict:
        return {"spacing": self.spacing, "seed": self.seed}

import math
from functools import lru_cache
from typing import List, Tuple

from Common.func_util import make_rng

from .DiskParams import CFieldParams

Point = Tuple[float, float]


class CObstacleField:
    """unbounded field of static point obstacles, reproducible cell by cell from the seed"""
    def __init__(self, params: CFieldParams):
        self.params = params
        self.spacing = params.spacing
        self.jitter = params.jitter
        self._cell = lru_cache(maxsize=4096)(self._make_cell)

    def _make_cell(self, i: int, j: int) -> Point:
        rng = make_rng(self.params.seed, i, j)
        dx, dy = rng.uniform(-self.jitter, self.jitter, size=2)
        return i*self.spacing + float(dx), j*self.spacing + float(dy)

    def query(self, xmin: float, xmax: float, ymin: float, ymax: float) -> List[Point]:
        """obstacles in the closed box, sorted"""
        s = self.spacing
        res = []
        for i in range(math.floor((xmin - self.jitter) / s), math.ceil((xmax + self.jitter) / s) + 1):
            for j in range(math.floor((ymin - self.jitter) / s), math.ceil((ymax + self.jitter) / s) + 1):
                ox, oy = self._cell(i, j)
                if xmin <= ox <= xmax and ymin <= oy <= ymax:
                    res.append((ox, oy))
        res.sort()
        return res

    def within(self, center, radius: float) -> List[Point]:
        cx, cy = center
        return [o for o in self.query(cx - radius, cx + radius, cy - radius, cy + radius) if math.hypot(o[0] - cx, o[1] - cy) <= radius]

    def m_bound(self, r: float) -> int:
        return self.params.m_bound(r)

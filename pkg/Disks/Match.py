import math
from typing import Sequence, Tuple

import numpy as np

from .Hungarian import hungarian_solve


def bottleneck_distance(desired: Sequence, actual: Sequence) -> float:
    """smallest t such that a perfect matching uses only pairs closer than t"""
    a = np.asarray(desired, dtype=float).reshape(-1, 2)
    b = np.asarray(actual, dtype=float).reshape(-1, 2)
    d = np.hypot(a[:, None, 0] - b[None, :, 0], a[:, None, 1] - b[None, :, 1])
    levels = np.unique(d)
    lo, hi = 0, len(levels) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        _, total = hungarian_solve((d > levels[mid]).astype(float), tie_break=False)
        if total == 0:
            hi = mid
        else:
            lo = mid + 1
    return float(levels[lo])


def observation_match(desired: Sequence, actual: Sequence, eps: float) -> Tuple[bool, float]:
    if len(desired) != len(actual):
        return False, math.inf
    if len(desired) == 0:
        return True, 0.0
    residual = bottleneck_distance(desired, actual)
    return residual <= eps, residual

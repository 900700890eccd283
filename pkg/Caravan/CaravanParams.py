from typing import NamedTuple, Optional, Sequence, Union

from Common.CEnum import SENTINEL
from Common.IllusionException import CIllusionException, ErrCode


class CCaravanObs(NamedTuple):
    b: Union[float, SENTINEL]  # distance to the nearest robot behind
    a: Union[float, SENTINEL]  # distance to the nearest robot ahead


class CCaravanParams:
    def __init__(self, n: int, v_min: float, v_max: float, x0: Optional[Sequence[float]] = None):
        self.n = int(n)
        self.v_min = float(v_min)
        self.v_max = float(v_max)
        self.x0 = None if x0 is None else tuple(float(v) for v in x0)
        self.check()

    def check(self):
        if self.n < 1:
            raise CIllusionException(f"caravan needs at least one robot, got {self.n}", ErrCode.INVALID_PARAMS)
        if not self.v_min < self.v_max:
            raise CIllusionException(f"caravan needs v_min < v_max, got [{self.v_min}, {self.v_max}]", ErrCode.INVALID_PARAMS)
        if self.x0 is not None:
            if len(self.x0) != self.n:
                raise CIllusionException(f"x0 has {len(self.x0)} positions for {self.n} robots", ErrCode.INVALID_PARAMS)
            if len(set(self.x0)) != self.n:
                raise CIllusionException(f"caravan initial positions must be distinct: {self.x0}", ErrCode.INVALID_PARAMS)

    @property
    def v_range(self) -> float:
        return self.v_max - self.v_min

    def to_dict(self) -> dict:
        return {"n": self.n, "v_min": self.v_min, "v_max": self.v_max, "x0": None if self.x0 is None else list(self.x0)}

    def __repr__(self):
        return f"CCaravanParams(n={self.n}, v=[{self.v_min}, {self.v_max}])"

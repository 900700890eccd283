from bisect import bisect_right
from typing import Iterable, List, Sequence

from Common.IllusionException import CIllusionException, ErrCode


class CTimeScale:
    """z: secondary step -> primary step, strictly increasing"""
    def __init__(self, mapping: Iterable[int] = ()):
        self.z: List[int] = []
        for v in mapping:
            self.append(v)

    def append(self, v: int):
        v = int(v)
        if v < 0:
            raise CIllusionException(f"time scaling value must be non-negative, got {v}", ErrCode.TIMESCALE_ERR, step_idx=len(self.z))
        if self.z and v <= self.z[-1]:
            raise CIllusionException(f"time scaling not strictly increasing: z({len(self.z)})={v} after {self.z[-1]}", ErrCode.TIMESCALE_ERR, step_idx=len(self.z))
        self.z.append(v)

    def __getitem__(self, k):
        return self.z[k]

    def __len__(self):
        return len(self.z)

    def __iter__(self):
        return iter(self.z)

    def __eq__(self, other):
        return isinstance(other, CTimeScale) and self.z == other.z

    def plateau_lengths(self) -> List[int]:
        return [self.z[k+1] - self.z[k] for k in range(len(self.z)-1)]

    def stretch(self, seq: Sequence) -> list:
        """per primary step t < z(-1): the entry of seq for the secondary step whose plateau holds t"""
        if len(seq) < len(self.z):
            raise CIllusionException(f"{len(seq)} secondary entries for a time scaling of {len(self.z)} steps", ErrCode.INSUFFICIENT_DATA)
        return [seq[bisect_right(self.z, t)] for t in range(self.z[-1] if self.z else 0)]

    def compose(self, outer: 'CTimeScale') -> 'CTimeScale':
        """k -> outer(z(k))"""
        if self.z and self.z[-1] >= len(outer):
            raise CIllusionException(f"outer time scaling covers {len(outer)} steps, inner reaches {self.z[-1]}", ErrCode.TIME_OUT_OF_RANGE)
        return CTimeScale(outer[v] for v in self.z)

    @classmethod
    def identity(cls, horizon: int) -> 'CTimeScale':
        return cls(range(horizon+1))

    def to_list(self) -> List[int]:
        return list(self.z)

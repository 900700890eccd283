from typing import Iterable, List, Sequence, Tuple

from Common.IllusionException import CIllusionException, ErrCode


class CRoleMapSeq:
    """rho_k: participant index (0..m-1) -> primary robot index (0..n_hat-1), one map per secondary step"""
    def __init__(self, maps: Iterable[Sequence[int]] = (), m: int = None):
        self.maps: List[Tuple[int, ...]] = []
        self.m = m
        for rho in maps:
            self.append(rho)

    def append(self, rho: Sequence[int]):
        rho = tuple(int(v) for v in rho)
        if self.m is None:
            self.m = len(rho)
        if len(rho) != self.m:
            raise CIllusionException(f"role map covers {len(rho)} participants, expected {self.m}", ErrCode.ARITY_MISMATCH, step_idx=len(self.maps))
        self.maps.append(rho)

    def __getitem__(self, k) -> Tuple[int, ...]:
        return self.maps[k]

    def __len__(self):
        return len(self.maps)

    def __eq__(self, other):
        return isinstance(other, CRoleMapSeq) and self.maps == other.maps

    def compose(self, outer: 'CRoleMapSeq', z) -> 'CRoleMapSeq':
        """k -> outer_{z(k)} o rho_k"""
        res = CRoleMapSeq(m=self.m)
        for k, rho in enumerate(self.maps):
            outer_rho = outer[z[k]]
            for i, j in enumerate(rho):
                if j >= len(outer_rho):
                    raise CIllusionException(f"outer role map has no entry for middle robot {j}", ErrCode.ARITY_MISMATCH, robot_idx=i, step_idx=k)
            res.append(outer_rho[j] for j in rho)
        return res

    @classmethod
    def identity(cls, m: int, horizon: int) -> 'CRoleMapSeq':
        rho = tuple(range(m))
        return cls([rho] * (horizon+1), m=m)

    @classmethod
    def constant(cls, rho: Sequence[int], horizon: int) -> 'CRoleMapSeq':
        return cls([tuple(rho)] * (horizon+1))

    def to_changepoints(self) -> List[list]:
        res = []
        for k, rho in enumerate(self.maps):
            if not res or tuple(res[-1][1]) != rho:
                res.append([k, list(rho)])
        return res

    @classmethod
    def from_changepoints(cls, cps: Sequence, length: int) -> 'CRoleMapSeq':
        if not cps or cps[0][0] != 0:
            raise CIllusionException("role change-points must start at step 0", ErrCode.ROLE_OUT_OF_RANGE)
        res = cls()
        for idx, (k, rho) in enumerate(cps):
            end = cps[idx+1][0] if idx+1 < len(cps) else length
            if end <= k:
                raise CIllusionException(f"role change-points not increasing at step {k}", ErrCode.ROLE_OUT_OF_RANGE, step_idx=k)
            for _ in range(k, end):
                res.append(rho)
        return res

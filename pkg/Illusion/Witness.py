from typing import Any, Dict, List, Optional

from System.Policy import CPolicy

from .RoleMap import CRoleMapSeq
from .TimeScale import CTimeScale


class CWitness:
    def __init__(self, policies: List[CPolicy], roles: CRoleMapSeq, timescale: CTimeScale, meta: Optional[Dict[str, Any]] = None):
        self.policies = policies
        self.roles = roles
        self.timescale = timescale
        self.meta = meta if meta is not None else {}
        if policies:
            self.meta.setdefault("n_hat", len(policies))

    @property
    def m(self) -> int:
        return self.roles.m or 0

    @property
    def n_hat(self) -> int:
        return len(self.policies) if self.policies else int(self.meta.get("n_hat", 0))

    @property
    def horizon(self) -> int:
        return min(len(self.timescale), len(self.roles)) - 1

    def policy_descriptors(self) -> List[dict]:
        if self.policies:
            return [p.descriptor() for p in self.policies]
        return list(self.meta.get("policies", []))

    def __repr__(self):
        return f"CWitness(m={self.m}, n_hat={self.n_hat}, horizon={self.horizon})"

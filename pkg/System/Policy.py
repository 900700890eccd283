from typing import Any, Callable, List, Optional, Sequence

from Common.CEnum import POLICY_KIND
from Common.func_util import make_rng


class CPolicy:
    """
    STATE_FEEDBACK: evaluator(x_i)
    OWN_HISTORY:    evaluator(u_hist, y_hist)             u_0..u_{k-1}, y_0..y_k of this robot
    CROSS_SYSTEM:   evaluator(u_hist, y_hist, sec_hist)   plus the secondary state history
    """
    def __init__(self, evaluator: Callable, kind: POLICY_KIND = POLICY_KIND.STATE_FEEDBACK, name: str = ""):
        self.evaluator = evaluator
        self.kind = kind
        self.name = name or kind.name.lower()

    def act(self, x_i, u_hist: Sequence, y_hist: Sequence, sec_hist: Optional[Sequence] = None):
        if self.kind == POLICY_KIND.STATE_FEEDBACK:
            return self.evaluator(x_i)
        elif self.kind == POLICY_KIND.OWN_HISTORY:
            return self.evaluator(u_hist, y_hist)
        return self.evaluator(u_hist, y_hist, sec_hist)

    def descriptor(self) -> dict:
        return {"kind": self.kind.name, "name": self.name}

    def __repr__(self):
        return f"CPolicy({self.name})"


def constant_policy(u) -> CPolicy:
    return CPolicy(lambda _x: u, POLICY_KIND.STATE_FEEDBACK, name=f"constant({u})")


def seeded_uniform_policy(seed: int, robot_idx: int, sampler: Callable[[Any], Any]) -> CPolicy:
    """
    sampler(rng) draws one action; step k uses the stream (seed, robot, k) so the
    policy stays a pure function of its own history
    """
    def _eval(u_hist, _y_hist):
        return sampler(make_rng(seed, robot_idx, len(u_hist)))
    return CPolicy(_eval, POLICY_KIND.OWN_HISTORY, name=f"seeded_uniform(seed={seed},robot={robot_idx})")


def seeded_policies(seed: int, n: int, sampler: Callable[[Any], Any]) -> List[CPolicy]:
    return [seeded_uniform_policy(seed, i, sampler) for i in range(n)]


def replay_policies(trace) -> List[CPolicy]:
    """own-history policies that return the recorded action of each step"""
    if not trace.states:
        return []
    n = len(trace.states[0])
    actions = list(trace.actions)

    def _make(i):
        def _eval(u_hist, _y_hist):
            return actions[len(u_hist)][i]
        return CPolicy(_eval, POLICY_KIND.OWN_HISTORY, name=f"replay(robot={i})")
    return [_make(i) for i in range(n)]

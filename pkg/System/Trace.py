from typing import List

from Common.func_util import fmt_value, parse_value


class CTrace:
    def __init__(self, system_name: str = ""):
        self.system_name = system_name
        self.states: List[tuple] = []
        self.actions: List[tuple] = []
        self.observations: List[tuple] = []

    @property
    def horizon(self) -> int:
        return len(self.actions)

    def add_state(self, x, y):
        self.states.append(x)
        self.observations.append(y)

    def add_step(self, u, x, y):
        self.actions.append(u)
        self.add_state(x, y)

    def reobserve(self, system) -> 'CTrace':
        """same states and actions, observations recomputed under system's sensor"""
        res = CTrace(system.name)
        res.states = list(self.states)
        res.actions = list(self.actions)
        res.observations = [tuple(system.robot_observe(x, i) for i in range(system.n)) for x in self.states]
        return res

    def __len__(self):
        return len(self.states)

    def __eq__(self, other):
        if not isinstance(other, CTrace):
            return NotImplemented
        return self.states == other.states and self.actions == other.actions and self.observations == other.observations

    def to_dict(self, lossless=True) -> dict:
        return {
            "system": self.system_name,
            "states": fmt_value(self.states, lossless),
            "actions": fmt_value(self.actions, lossless),
        }

    @classmethod
    def from_dict(cls, d: dict) -> 'CTrace':
        """observations are recomputed by the caller from the rebuilt system"""
        trace = cls(d.get("system", ""))
        trace.states = [parse_value(x) for x in d["states"]]
        trace.actions = [parse_value(u) for u in d["actions"]]
        return trace

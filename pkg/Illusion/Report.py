from typing import List, Optional

from Common.func_util import fmt_value


class CIllusionReport:
    def __init__(self, horizon: int, residuals: List[float], plateau_lengths: List[int], eps: float):
        self.horizon = horizon
        self.per_step_residual = residuals
        self.plateau_lengths = plateau_lengths
        self.measured_slowdown = max(plateau_lengths) if plateau_lengths else 0
        self.eps = eps
        self.first_fail_step: Optional[int] = next((k for k, r in enumerate(residuals) if not r <= eps), None)
        self.passed = self.first_fail_step is None

    def recompute_pass(self) -> bool:
        return all(r <= self.eps for r in self.per_step_residual)

    @property
    def max_residual(self) -> float:
        return max(self.per_step_residual) if self.per_step_residual else 0.0

    def to_dict(self) -> dict:
        return {
            "pass": self.passed,
            "horizon": self.horizon,
            "eps": fmt_value(self.eps),
            "measured_slowdown": self.measured_slowdown,
            "first_fail_step": self.first_fail_step,
            "max_residual": fmt_value(self.max_residual),
            "plateau_lengths": list(self.plateau_lengths),
            "per_step_residual": fmt_value(self.per_step_residual),
        }

    def __repr__(self):
        state = "pass" if self.passed else f"fail@{self.first_fail_step}"
        return f"CIllusionReport({state}, horizon={self.horizon}, slowdown={self.measured_slowdown})"

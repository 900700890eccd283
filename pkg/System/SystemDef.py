from typing import Any, Callable, Dict, Optional, Tuple

from Common.CEnum import ARITH_MODE
from Common.IllusionException import CIllusionException, ErrCode


def exact_distance(y, y_hat) -> float:
    return 0.0 if y == y_hat else float("inf")


class CSystem:
    """
    deterministic multi-robot transition system (n, X, U, f, Y, h, x0)

    robot_transition(x, i, u_i) -> next state component of robot i
    robot_observe(x, i) -> observation of robot i
    both see the full joint state x; only robot i's action reaches robot i's transition
    """
    def __init__(
        self,
        name: str,
        n: int,
        robot_transition: Callable[[Tuple, int, Any], Any],
        robot_observe: Callable[[Tuple, int], Any],
        action_valid: Callable[[int, Any], bool],
        x0: Tuple,
        arith_mode: ARITH_MODE = ARITH_MODE.FLOAT,
        state_valid: Optional[Callable[[int, Any], bool]] = None,
        obs_distance: Optional[Callable[[Any, Any], float]] = None,
        state_desc: str = "",
        meta: Optional[Dict[str, Any]] = None,
    ):
        if n < 1:
            raise CIllusionException(f"system {name} needs at least one robot, got {n}", ErrCode.INVALID_PARAMS)
        x0 = tuple(x0)
        if len(x0) != n:
            raise CIllusionException(f"x0 of {name} has {len(x0)} components, expected {n}", ErrCode.DIMENSION_MISMATCH)
        self.name = name
        self.n = n
        self.robot_transition = robot_transition
        self.robot_observe = robot_observe
        self.action_valid = action_valid
        self.x0 = x0
        self.arith_mode = arith_mode
        self.state_valid = state_valid
        self.obs_distance = obs_distance if obs_distance is not None else exact_distance
        self.state_desc = state_desc
        self.meta = meta if meta is not None else {}  # params echo, lets the runner rebuild the system

    def __repr__(self):
        return f"CSystem({self.name}, n={self.n}, {self.arith_mode.name})"

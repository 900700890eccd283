from typing import List, Tuple

import numpy as np
from scipy.optimize import linear_sum_assignment

from Common.IllusionException import CIllusionException, ErrCode


def _optimum(cost: np.ndarray) -> float:
    if cost.shape[0] == 0:
        return 0.0
    r, c = linear_sum_assignment(cost)
    return float(cost[r, c].sum())


def _lexicographic(cost: np.ndarray, best: float) -> List[int]:
    """fix rows in order, each to the smallest column that still admits an optimal completion"""
    rows, cols = cost.shape
    tol = 1e-9 * max(1.0, abs(best))
    free = list(range(cols))
    fixed_cost = 0.0
    res = []
    for r in range(rows):
        rest = list(range(r+1, rows))
        for c in free:
            others = [f for f in free if f != c]
            head = fixed_cost + cost[r, c]
            sub = cost[np.ix_(rest, others)] if rest else np.zeros((0, len(others)))
            if rest and head + sub.min(axis=1).sum() > best + tol:
                continue
            if head + _optimum(sub) <= best + tol:
                res.append(c)
                free = others
                fixed_cost = head
                break
        else:
            raise CIllusionException(f"no optimal completion for row {r}", ErrCode.NON_FINITE_COST, robot_idx=r)
    return res


def hungarian_solve(cost, tie_break: bool = True) -> Tuple[List[int], float]:
    """
    minimum-cost matching of rows into columns
    returns (assignment, total): assignment[row] is a column, -1 for rows left over when rows > columns
    with tie_break, the lexicographically smallest optimal assignment
    """
    cost = np.asarray(cost, dtype=float)
    if cost.ndim != 2:
        raise CIllusionException(f"cost must be a matrix, got shape {cost.shape}", ErrCode.DIMENSION_MISMATCH)
    if not np.all(np.isfinite(cost)):
        raise CIllusionException("cost matrix has non-finite entries", ErrCode.NON_FINITE_COST)
    if np.any(cost < 0):
        raise CIllusionException("cost matrix has negative entries", ErrCode.NON_FINITE_COST)
    rows, cols = cost.shape
    if rows == 0:
        return [], 0.0
    padded = cost
    if rows > cols:
        padded = np.hstack([cost, np.zeros((rows, rows - cols))])

    r_ind, c_ind = linear_sum_assignment(padded)
    best = float(padded[r_ind, c_ind].sum())
    if tie_break:
        assignment = _lexicographic(padded, best)
    else:
        assignment = [0] * rows
        for r, c in zip(r_ind, c_ind):
            assignment[int(r)] = int(c)
    assignment = [c if c < cols else -1 for c in assignment]
    total = float(sum(cost[r, c] for r, c in enumerate(assignment) if c >= 0))
    return assignment, total

import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from Common.IllusionException import CIllusionException, ErrCode
from Disks.Hungarian import hungarian_solve
from Disks.Match import bottleneck_distance, observation_match


def brute_force(cost):
    """lexicographically first optimal injection of rows into columns"""
    cost = np.asarray(cost, dtype=float)
    rows, cols = cost.shape
    best, best_perm = math.inf, None
    for perm in itertools.permutations(range(cols), rows):
        total = sum(cost[r, c] for r, c in enumerate(perm))
        if total < best - 1e-9:
            best, best_perm = total, list(perm)
    return best_perm, best


def test_two_by_two():
    assert hungarian_solve([[1, 2], [2, 1]]) == ([0, 1], 2.0)
    assert hungarian_solve([[2, 1], [1, 2]]) == ([1, 0], 2.0)


def test_single_entry():
    assert hungarian_solve([[3.5]]) == ([0], 3.5)


def test_empty():
    assert hungarian_solve(np.zeros((0, 3))) == ([], 0.0)


def test_ties_take_lexicographically_smallest():
    assert hungarian_solve(np.ones((3, 3)))[0] == [0, 1, 2]
    assert hungarian_solve([[0, 0], [0, 0]])[0] == [0, 1]
    cost = [[0, 0, 1], [0, 0, 1], [1, 1, 0]]
    assignment, total = hungarian_solve(cost)
    assert total == 0.0
    assert assignment == [0, 1, 2]


def test_more_rows_than_columns():
    assert hungarian_solve([[1], [0]]) == ([-1, 0], 0.0)


@pytest.mark.parametrize("cost", [
    [[math.inf, 1], [1, 1]],
    [[math.nan, 1], [1, 1]],
    [[-1, 1], [1, 1]],
])
def test_rejects_bad_costs(cost):
    with pytest.raises(CIllusionException) as e:
        hungarian_solve(cost)
    assert e.value.errcode == ErrCode.NON_FINITE_COST


def test_rejects_non_matrix():
    with pytest.raises(CIllusionException) as e:
        hungarian_solve([1, 2, 3])
    assert e.value.errcode == ErrCode.DIMENSION_MISMATCH


def test_matches_brute_force_on_random_matrices():
    rng = np.random.Generator(np.random.PCG64(20240101))
    for _ in range(200):
        size = int(rng.integers(2, 8))
        cost = rng.uniform(0, 10, size=(size, size))
        assignment, total = hungarian_solve(cost)
        expect, best = brute_force(cost)
        assert total == pytest.approx(best)
        assert sorted(assignment) == list(range(size))
        assert assignment == expect


@given(
    rows=st.integers(min_value=1, max_value=4),
    extra=st.integers(min_value=0, max_value=2),
    data=st.data(),
)
@settings(max_examples=100, deadline=None)
def test_integer_costs_with_ties(rows, extra, data):
    cols = rows + extra
    flat = data.draw(st.lists(st.integers(min_value=0, max_value=3), min_size=rows*cols, max_size=rows*cols))
    cost = np.array(flat, dtype=float).reshape(rows, cols)
    assignment, total = hungarian_solve(cost)
    expect, best = brute_force(cost)
    assert total == best
    assert assignment == expect


def test_bottleneck_distance():
    desired = [(0.0, 0.0), (1.0, 0.0)]
    actual = [(1.0, 0.1), (0.0, 0.3)]
    assert bottleneck_distance(desired, actual) == pytest.approx(0.3)


def test_observation_match_order_free():
    assert observation_match([(0.0, 0.0), (1.0, 1.0)], [(1.0, 1.0), (0.0, 0.0)], 1e-3) == (True, 0.0)


def test_observation_match_displaced():
    ok, residual = observation_match([(0.0, 0.0)], [(0.002, 0.0)], 1e-3)
    assert not ok
    assert residual == pytest.approx(0.002)


def test_observation_match_edges():
    assert observation_match([], [], 1e-3) == (True, 0.0)
    ok, residual = observation_match([(0.0, 0.0)], [], 1e-3)
    assert not ok and math.isinf(residual)


@given(
    points=st.lists(st.tuples(st.floats(-1, 1), st.floats(-1, 1)), min_size=1, max_size=6),
    data=st.data(),
)
@settings(max_examples=50, deadline=None)
def test_observation_match_permutation_invariant(points, data):
    shuffled = data.draw(st.permutations(points))
    assert observation_match(points, shuffled, 0.0) == (True, 0.0)

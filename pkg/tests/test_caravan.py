import math

import pytest

from Caravan.CaravanIllusion import caravan_dilation, caravan_illusion, caravan_slowdown_bound
from Caravan.CaravanParams import CCaravanParams
from Caravan.CaravanSystem import caravan_system, make_caravan_distance, neighbour_switch_steps
from Common.CEnum import POLICY_KIND, SENTINEL
from Common.IllusionException import CIllusionException, ErrCode
from Illusion.Construct import compose_witness
from Illusion.Verify import measure_slowdown, verify_illusion
from IllusionConfig import CIllusionConfig
from System.Evolve import rollout
from System.Policy import constant_policy

from conftest import uniform_policies

PARAM_SETS = [
    # secondary (n, v_min, v_max, x0), primary (v_min, v_max)
    ((5, 0.0, 1.0, (0.0, -60.0, 60.0, -120.0, 120.0)), (0.0, 1.0)),
    ((5, 0.0, 1.0, (0.0, -60.0, 60.0, -120.0, 120.0)), (0.0, 2.0)),
    ((3, 0.0, 2.0, (0.0, -100.0, 100.0)), (0.0, 1.0)),
    ((4, 0.0, 1.0, (0.0, -60.0, 60.0, 120.0)), (1.0, 1.5)),
    ((3, 1.0, 3.0, (0.0, -150.0, 150.0)), (0.0, 1.0)),
    ((1, 0.0, 1.0, (0.0,)), (0.0, 1.0)),
]


def test_caravan_observation_edges():
    sys_ = caravan_system(CCaravanParams(2, 0.0, 1.0, (0.0, 3.0)))
    trace = rollout(sys_, [constant_policy(0.0), constant_policy(0.0)], 1)
    assert trace.observations[0] == ((SENTINEL.INF, 3.0), (3.0, SENTINEL.INF))


def test_params_need_positive_range():
    with pytest.raises(CIllusionException) as e:
        CCaravanParams(3, 1.0, 1.0)
    assert e.value.errcode == ErrCode.INVALID_PARAMS


def test_params_need_distinct_positions():
    with pytest.raises(CIllusionException) as e:
        CCaravanParams(2, 0.0, 1.0, (1.0, 1.0))
    assert e.value.errcode == ErrCode.INVALID_PARAMS


def test_distance_treats_parking_as_absence():
    dist = make_caravan_distance(100.0)
    assert dist((SENTINEL.INF, 5.0), (100.0, 5.0)) == 0.0
    assert dist((SENTINEL.INF, 5.0), (90.0, 5.0)) == 10.0
    assert dist((1.0, 5.0), (1.5, 5.0)) == 0.5
    assert math.isinf(dist(1, 2))


@pytest.mark.parametrize("sec,pri,bound", [
    ((0.0, 1.0), (0.0, 1.0), 2),
    ((0.0, 1.0), (0.0, 4.0), 1),
    ((0.0, 10.0), (0.0, 10.0), 2),
    ((0.0, 3.0), (0.0, 1.0), 6),
])
def test_slowdown_bound(sec, pri, bound):
    assert caravan_slowdown_bound(CCaravanParams(2, *sec), CCaravanParams(3, *pri)) == bound


def test_all_max_speed():
    secondary = CCaravanParams(5, 0.0, 1.0, (0.0, 10.0, 20.0, 30.0, 40.0))
    run = caravan_illusion(secondary, CCaravanParams(3, 0.0, 1.0), [constant_policy(1.0)] * 5, 20)
    assert run.report.passed
    assert run.report.measured_slowdown <= 2
    assert run.witness.roles[0] == (0,)


def test_lone_robot():
    secondary = CCaravanParams(1, 0.0, 1.0, (0.0,))
    run = caravan_illusion(secondary, CCaravanParams(3, 0.0, 1.0), uniform_policies(0, 1, 0.0, 1.0), 10)
    assert run.report.passed


def test_primary_must_have_three_robots():
    secondary = CCaravanParams(2, 0.0, 1.0, (0.0, 10.0))
    with pytest.raises(CIllusionException) as e:
        caravan_illusion(secondary, CCaravanParams(4, 0.0, 1.0), uniform_policies(0, 2, 0.0, 1.0), 5)
    assert e.value.errcode == ErrCode.INVALID_PARAMS


def test_offset_beyond_parking():
    secondary = CCaravanParams(2, 0.0, 1.0, (0.0, 2e6))
    with pytest.raises(CIllusionException) as e:
        caravan_illusion(secondary, CCaravanParams(3, 0.0, 1.0), uniform_policies(0, 2, 0.0, 1.0), 5)
    assert e.value.errcode == ErrCode.UNREACHABLE_OFFSET


def test_neighbour_switch_steps():
    sys_ = caravan_system(CCaravanParams(2, 0.0, 2.0, (0.0, 1.0)))
    trace = rollout(sys_, [constant_policy(2.0), constant_policy(0.0)], 3)
    assert neighbour_switch_steps(trace, 0) == [1]


@pytest.mark.parametrize("sec,pri", PARAM_SETS)
@pytest.mark.parametrize("seed", range(5))
def test_slowdown_within_bound(sec, pri, seed):
    n, v_min, v_max, x0 = sec
    secondary = CCaravanParams(n, v_min, v_max, x0)
    primary = CCaravanParams(3, *pri)
    run = caravan_illusion(secondary, primary, uniform_policies(seed, n, v_min, v_max), 50)
    assert run.report.passed
    assert run.report.measured_slowdown <= caravan_slowdown_bound(secondary, primary)
    assert run.witness.meta["slowdown_bound"] == caravan_slowdown_bound(secondary, primary)
    # chasers never overshoot the participant
    for x in run.pri_trace.states:
        assert x[1] < x[0] < x[2]


def test_dilation(interior_caravan, mid_primary):
    middle = caravan_illusion(interior_caravan, mid_primary, uniform_policies(3, 5, 0.0, 1.0), 30)
    top = caravan_dilation(middle, 3)
    assert top.report.passed
    assert list(top.witness.timescale) == [3 * k for k in range(middle.pri_trace.horizon + 1)]
    assert measure_slowdown(top.witness.timescale) == 3
    assert top.pri_system.meta["v_max"] == pytest.approx(1.0 / 3)


def test_composition(interior_caravan, mid_primary):
    inner = caravan_illusion(interior_caravan, mid_primary, uniform_policies(4, 5, 0.0, 1.0), 50)
    outer = caravan_dilation(inner, 3)
    both = compose_witness(outer.witness, inner.witness)
    report = verify_illusion(inner.sec_system, inner.sec_trace, outer.pri_system, outer.pri_trace, 1, both, 1e-9)
    assert report.passed
    assert report.measured_slowdown <= inner.report.measured_slowdown * outer.report.measured_slowdown


def test_witness_policies_replay_the_chase(interior_caravan, mid_primary):
    run = caravan_illusion(interior_caravan, mid_primary, uniform_policies(6, 5, 0.0, 1.0), 30)
    kinds = [p.kind for p in run.witness.policies]
    assert kinds == [POLICY_KIND.STATE_FEEDBACK, POLICY_KIND.CROSS_SYSTEM, POLICY_KIND.CROSS_SYSTEM]
    aligned = run.witness.timescale.stretch(run.sec_trace.states)
    assert len(aligned) == run.pri_trace.horizon
    again = rollout(run.pri_system, run.witness.policies, run.pri_trace.horizon, sec_states=aligned)
    assert again.states == run.pri_trace.states
    assert again.actions == run.pri_trace.actions


def test_neighbour_switch_to_absence_is_unreachable():
    # robot 0 overtakes robot 1 at step 1: its ahead offset jumps from 1 to "nobody"
    secondary = CCaravanParams(2, 0.0, 2.0, (0.0, 1.0))
    policies = [constant_policy(2.0), constant_policy(0.0)]
    with pytest.raises(CIllusionException) as e:
        caravan_illusion(secondary, CCaravanParams(3, 0.0, 1.0), policies, 3)
    assert e.value.errcode == ErrCode.UNREACHABLE_OFFSET
    assert e.value.step_idx == 1


def test_neighbour_switch_within_reach():
    secondary = CCaravanParams(2, 0.0, 2.0, (0.0, 1.0))
    policies = [constant_policy(2.0), constant_policy(0.0)]
    run = caravan_illusion(secondary, CCaravanParams(3, 0.0, 1.0), policies, 3, CIllusionConfig({"d_far": 20.0}))
    assert run.report.passed
    assert run.report.measured_slowdown > caravan_slowdown_bound(secondary, CCaravanParams(3, 0.0, 1.0))

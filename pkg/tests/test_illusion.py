from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from Caravan.CaravanIllusion import caravan_illusion
from Caravan.CaravanParams import CCaravanParams
from Caravan.CaravanSystem import caravan_system
from Common.CEnum import KAPPA_TYPE, SENTINEL
from Common.IllusionException import CIllusionException, ErrCode
from Illusion.Construct import compose_witness, coarsen_run, identity_run, identity_witness
from Illusion.Perception import perceptual_inclusion, perceptual_sample
from Illusion.Report import CIllusionReport
from Illusion.RoleMap import CRoleMapSeq
from Illusion.Run import CIllusionRun
from Illusion.TimeScale import CTimeScale
from Illusion.Verify import measure_slowdown, verify_illusion
from Illusion.Witness import CWitness
from Illusion.WitnessCodec import dump_witness, load_witness, witness_from_dict, witness_to_dict
from Squeeze.SqueezeSystem import thirds_system
from System.Evolve import replay
from System.Policy import constant_policy

from conftest import uniform_policies


def _caravan3():
    return caravan_system(CCaravanParams(3, 0.0, 1.0, (0.0, 10.0, 20.0)))


def test_measure_slowdown():
    assert measure_slowdown([0, 1, 2, 3]) == 1
    assert measure_slowdown(CTimeScale([0, 2, 7, 9])) == 5


def test_measure_slowdown_needs_two_values():
    with pytest.raises(CIllusionException) as e:
        measure_slowdown([0])
    assert e.value.errcode == ErrCode.INSUFFICIENT_DATA


@pytest.mark.parametrize("mapping", [[0, 2, 2], [0, 3, 1], [-1, 0]])
def test_timescale_rejects_bad_mapping(mapping):
    with pytest.raises(CIllusionException) as e:
        CTimeScale(mapping)
    assert e.value.errcode == ErrCode.TIMESCALE_ERR


def test_report_fields():
    report = CIllusionReport(2, [0.0, 0.5, 0.0], [1, 3], 0.1)
    assert not report.passed
    assert report.first_fail_step == 1
    assert report.recompute_pass() == report.passed
    assert report.measured_slowdown == 3
    d = report.to_dict()
    assert d["pass"] is False
    assert d["max_residual"] == 0.5
    assert d["plateau_lengths"] == [1, 3]


def test_identity_caravan():
    sys_ = caravan_system(CCaravanParams(4, 0.0, 1.0, (0.0, 10.0, 20.0, 30.0)))
    run = identity_run(sys_, uniform_policies(1, 4, 0.0, 1.0), 100)
    report = run.verify(0.0)
    assert report.passed
    assert report.per_step_residual == [0.0] * 101
    assert report.measured_slowdown == 1
    assert measure_slowdown(run.witness.timescale) == 1


def test_identity_thirds():
    run = identity_run(thirds_system(), [constant_policy(Fraction(1, 3))], 9)
    assert run.verify(0).passed


def test_frozen_primary_fails(interior_caravan, mid_primary):
    run = caravan_illusion(interior_caravan, mid_primary, uniform_policies(0, 5, 0.0, 1.0), 50)
    assert run.report.passed
    actions = [(u[0], u[1], 0.0) for u in run.pri_trace.actions]
    frozen = replay(run.pri_system, actions)
    report = verify_illusion(run.sec_system, run.sec_trace, run.pri_system, frozen, 1, run.witness, 1e-9)
    assert not report.passed
    assert report.first_fail_step >= 1
    assert report.per_step_residual[report.first_fail_step] > 1e-9
    assert all(r <= 1e-9 for r in report.per_step_residual[:report.first_fail_step])


def test_role_out_of_range():
    sys_ = _caravan3()
    run = identity_run(sys_, uniform_policies(3, 3, 0.0, 1.0), 5)
    bad = CWitness(run.witness.policies, CRoleMapSeq.constant((5,), 5), CTimeScale.identity(5))
    with pytest.raises(CIllusionException) as e:
        verify_illusion(sys_, run.sec_trace, sys_, run.pri_trace, 1, bad, 0.0)
    assert e.value.errcode == ErrCode.ROLE_OUT_OF_RANGE


def test_time_out_of_range():
    sys_ = _caravan3()
    run = identity_run(sys_, uniform_policies(3, 3, 0.0, 1.0), 1)
    bad = CWitness(run.witness.policies, CRoleMapSeq.identity(3, 1), CTimeScale([0, 100]))
    with pytest.raises(CIllusionException) as e:
        verify_illusion(sys_, run.sec_trace, sys_, run.pri_trace, 3, bad, 0.0)
    assert e.value.errcode == ErrCode.TIME_OUT_OF_RANGE


def test_too_many_participants():
    sys_ = _caravan3()
    run = identity_run(sys_, uniform_policies(3, 3, 0.0, 1.0), 2)
    with pytest.raises(CIllusionException) as e:
        verify_illusion(sys_, run.sec_trace, sys_, run.pri_trace, 4, run.witness, 0.0)
    assert e.value.errcode == ErrCode.ARITY_MISMATCH


def test_compose_identities():
    sys_ = _caravan3()
    policies = uniform_policies(5, 3, 0.0, 1.0)
    inner = identity_witness(sys_, policies, 10)
    outer = identity_witness(sys_, policies, 10)
    both = compose_witness(outer, inner)
    assert both.timescale == CTimeScale.identity(10)
    assert both.roles == CRoleMapSeq.identity(3, 10)


def test_compose_rejects_narrow_outer():
    inner = identity_witness(_caravan3(), uniform_policies(5, 3, 0.0, 1.0), 10)
    outer = CWitness([], CRoleMapSeq.identity(2, 10), CTimeScale.identity(10))
    with pytest.raises(CIllusionException) as e:
        compose_witness(outer, inner)
    assert e.value.errcode == ErrCode.ARITY_MISMATCH


def test_coarsen_identity_keeps_report(interior_caravan, mid_primary):
    run = caravan_illusion(interior_caravan, mid_primary, uniform_policies(7, 5, 0.0, 1.0), 30)
    same = coarsen_run(run, KAPPA_TYPE.IDENTITY)
    report = same.verify(1e-9)
    assert report.passed
    assert report.per_step_residual == run.report.per_step_residual


def test_constant_kappa_accepts_anything(interior_caravan, mid_primary):
    run = caravan_illusion(interior_caravan, mid_primary, uniform_policies(0, 5, 0.0, 1.0), 30)
    actions = [(u[0], u[1], 0.0) for u in run.pri_trace.actions]
    broken = CIllusionRun(run.sec_system, run.sec_trace, run.pri_system, replay(run.pri_system, actions), run.witness, m=1)
    assert not broken.verify(1e-9).passed
    assert coarsen_run(broken, KAPPA_TYPE.CONSTANT).verify(0.0).passed


@given(seed=st.integers(min_value=0, max_value=2**32))
@settings(max_examples=20, deadline=None)
def test_coarsening_preserves_illusion(seed):
    secondary = CCaravanParams(4, 0.0, 1.0, (0.0, -60.0, 60.0, 120.0))
    run = caravan_illusion(secondary, CCaravanParams(3, 0.0, 1.0), uniform_policies(seed, 4, 0.0, 1.0), 20)
    for kappa in KAPPA_TYPE:
        assert coarsen_run(run, kappa).verify(1e-9).passed


def test_perceptual_sample_thirds():
    seen = perceptual_sample(thirds_system(), lambda _t: [constant_policy(Fraction(1, 3))], 9, 1)
    assert seen == {SENTINEL.BOTTOM, *range(1, 10)}


def test_perceptual_sample_lone_caravan():
    sys_ = caravan_system(CCaravanParams(1, 0.0, 1.0, (0.0,)))
    seen = perceptual_sample(sys_, lambda t: uniform_policies(t, 1, 0.0, 1.0), 5, 3)
    assert seen == {(SENTINEL.INF, SENTINEL.INF)}


def test_perceptual_sample_needs_trials():
    with pytest.raises(CIllusionException) as e:
        perceptual_sample(thirds_system(), lambda _t: [constant_policy(Fraction(0))], 3, 0)
    assert e.value.errcode == ErrCode.NO_TRIALS


def test_perceptual_inclusion():
    assert perceptual_inclusion({1, 2}, {1, 2, 3}) == (True, set())
    assert perceptual_inclusion({1, 4}, {1}) == (False, {4})


def test_witness_file(tmp_path, interior_caravan, mid_primary):
    run = caravan_illusion(interior_caravan, mid_primary, uniform_policies(2, 5, 0.0, 1.0), 20)
    path = dump_witness(run.witness, tmp_path / "witness.json")
    back = load_witness(path)
    assert back.timescale == run.witness.timescale
    assert back.roles == run.witness.roles
    assert back.n_hat == 3
    assert witness_to_dict(run.witness)["roles"] == [[0, [0]]]


def test_witness_rejects_decreasing_z():
    with pytest.raises(CIllusionException) as e:
        witness_from_dict({"z": [0, 2, 1], "roles": [[0, [0]]]})
    assert e.value.errcode == ErrCode.TIMESCALE_ERR

import math
from typing import Callable, Optional, Sequence

from Common.CEnum import KAPPA_TYPE, SENTINEL
from Common.IllusionException import CIllusionException, ErrCode
from System.Evolve import rollout
from System.Policy import CPolicy
from System.SystemDef import CSystem

from .RoleMap import CRoleMapSeq
from .Run import CIllusionRun
from .TimeScale import CTimeScale
from .Witness import CWitness


def identity_witness(system: CSystem, policies: Sequence[CPolicy], horizon: int) -> CWitness:
    """a system is an (n, 1)-illusion of itself: same policies, identity roles and pacing"""
    if len(policies) != system.n:
        raise CIllusionException(f"{len(policies)} policies for {system.n} robots", ErrCode.DIMENSION_MISMATCH)
    return CWitness(
        policies=list(policies),
        roles=CRoleMapSeq.identity(system.n, horizon),
        timescale=CTimeScale.identity(horizon),
        meta={"construction": "identity"},
    )


def identity_run(system: CSystem, policies: Sequence[CPolicy], horizon: int) -> CIllusionRun:
    trace = rollout(system, policies, horizon)
    witness = identity_witness(system, policies, horizon)
    return CIllusionRun(system, trace, system, trace, witness, m=system.n)


def compose_witness(outer: CWitness, inner: CWitness) -> CWitness:
    """
    inner: middle system emulating the secondary
    outer: top system emulating every robot of the middle system
    result pacing z_outer o z_inner, roles rho_outer_{z(k)} o rho_k
    """
    n_mid = inner.n_hat
    if outer.m < n_mid:
        raise CIllusionException(f"outer illusion covers {outer.m} of the {n_mid} middle robots", ErrCode.ARITY_MISMATCH)
    z = inner.timescale.compose(outer.timescale)
    roles = inner.roles.compose(outer.roles, inner.timescale)
    return CWitness(
        policies=list(outer.policies),
        roles=roles,
        timescale=z,
        meta={"construction": "compose", "inner": dict(inner.meta), "outer": dict(outer.meta)},
    )


def coarsen_system(system: CSystem, kappa: Callable, obs_distance: Optional[Callable] = None, kappa_name: str = "") -> CSystem:
    """same dynamics, observations post-composed with kappa"""
    base_observe = system.robot_observe

    def _observe(x, i):
        return kappa(base_observe(x, i))

    meta = dict(system.meta)
    if kappa_name:
        meta["kappa"] = kappa_name
    return CSystem(
        name=f"{system.name}|{kappa_name or 'kappa'}",
        n=system.n,
        robot_transition=system.robot_transition,
        robot_observe=_observe,
        action_valid=system.action_valid,
        x0=system.x0,
        arith_mode=system.arith_mode,
        state_valid=system.state_valid,
        obs_distance=obs_distance if obs_distance is not None else system.obs_distance,
        state_desc=system.state_desc,
        meta=meta,
    )


def _round_value(y):
    if isinstance(y, (tuple, list)):
        return tuple(_round_value(v) for v in y)
    if isinstance(y, SENTINEL) or y is None:
        return y
    return int(math.floor(y + 0.5))


def make_kappa(kappa_type: KAPPA_TYPE) -> Callable:
    if kappa_type == KAPPA_TYPE.IDENTITY:
        return lambda y: y
    elif kappa_type == KAPPA_TYPE.ROUND:
        return _round_value
    elif kappa_type == KAPPA_TYPE.CONSTANT:
        return lambda _y: 0
    raise CIllusionException(f"unknown kappa {kappa_type}", ErrCode.PARA_ERROR)


def coarsen_run(run: CIllusionRun, kappa_type: KAPPA_TYPE) -> CIllusionRun:
    """re-observe both recorded traces through kappa, the witness is reused unchanged"""
    kappa = make_kappa(kappa_type)
    sec = coarsen_system(run.sec_system, kappa, kappa_name=kappa_type.value)
    pri = coarsen_system(run.pri_system, kappa, obs_distance=run.sec_system.obs_distance, kappa_name=kappa_type.value)
    return CIllusionRun(sec, run.sec_trace.reobserve(sec), pri, run.pri_trace.reobserve(pri), run.witness, m=run.m)

from Common.IllusionException import CIllusionException, ErrCode
from System.SystemDef import CSystem
from System.Trace import CTrace

from .Report import CIllusionReport
from .TimeScale import CTimeScale
from .Witness import CWitness


def measure_slowdown(timescale) -> int:
    z = list(timescale)
    if len(z) < 2:
        raise CIllusionException(f"slowdown needs at least two time scaling values, got {len(z)}", ErrCode.INSUFFICIENT_DATA)
    return max(z[k+1] - z[k] for k in range(len(z)-1))


def obs_residual(system: CSystem, y, y_hat) -> float:
    if y == y_hat:
        return 0.0
    return float(system.obs_distance(y, y_hat))


def verify_illusion(
    sec_system: CSystem,
    sec_trace: CTrace,
    pri_system: CSystem,
    pri_trace: CTrace,
    m: int,
    witness: CWitness,
    eps: float,
) -> CIllusionReport:
    """
    for every recorded secondary step k and participant i:
        h_i(x_k) == h_hat_{rho_k(i)}(x_hat_{z(k)})    up to eps under the secondary's observation distance
    """
    if m < 1 or m > sec_system.n:
        raise CIllusionException(f"{m} participants for a {sec_system.n}-robot secondary", ErrCode.ARITY_MISMATCH)
    if witness.m < m:
        raise CIllusionException(f"witness maps {witness.m} participants, {m} requested", ErrCode.ARITY_MISMATCH)
    horizon = len(sec_trace) - 1
    z, roles = witness.timescale, witness.roles
    if len(z) <= horizon:
        raise CIllusionException(f"time scaling covers {len(z)} steps, secondary trace has {horizon+1}", ErrCode.TIME_OUT_OF_RANGE, step_idx=len(z))
    if len(roles) <= horizon:
        raise CIllusionException(f"role maps cover {len(roles)} steps, secondary trace has {horizon+1}", ErrCode.ROLE_OUT_OF_RANGE, step_idx=len(roles))

    residuals = []
    for k in range(horizon+1):
        if z[k] >= len(pri_trace):
            raise CIllusionException(f"z({k})={z[k]} beyond primary trace of {len(pri_trace)} states", ErrCode.TIME_OUT_OF_RANGE, step_idx=k)
        y_hat = pri_trace.observations[z[k]]
        res = 0.0
        for i in range(m):
            j = roles[k][i]
            if not 0 <= j < pri_system.n:
                raise CIllusionException(f"participant {i} mapped to robot {j}, primary has {pri_system.n}", ErrCode.ROLE_OUT_OF_RANGE, robot_idx=i, step_idx=k)
            res = max(res, obs_residual(sec_system, sec_trace.observations[k][i], y_hat[j]))
        residuals.append(res)
    plateaus = CTimeScale(z[:horizon+1]).plateau_lengths()
    return CIllusionReport(horizon, residuals, plateaus, eps)

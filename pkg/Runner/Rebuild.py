from pathlib import Path
from typing import Union

import orjson

from Caravan.CaravanParams import CCaravanParams
from Caravan.CaravanSystem import caravan_system
from Common.CEnum import KAPPA_TYPE
from Common.IllusionException import CIllusionException, ErrCode
from Disks.DiskParams import CDiskParams
from Disks.DiskSystem import disks_system, single_system_from_meta
from Illusion.Construct import coarsen_system, make_kappa
from Illusion.Report import CIllusionReport
from Illusion.Verify import verify_illusion
from Illusion.WitnessCodec import load_witness
from Squeeze.SqueezeSystem import binary_system, thirds_system
from System.Evolve import replay
from System.SystemDef import CSystem
from System.Trace import CTrace

DISK_KEYS = ("n", "workspace", "v_wheel_max", "r", "wheelbase", "dt", "x0", "robot_radius")


def system_from_meta(meta: dict, partner: CSystem = None) -> CSystem:
    """inverse of the meta echo every system factory stores"""
    kind = meta.get("kind")
    if kind == "caravan":
        system = caravan_system(CCaravanParams(meta["n"], meta["v_min"], meta["v_max"], meta["x0"]), meta["d_far"])
    elif kind == "disks":
        system = disks_system(CDiskParams(**{k: meta[k] for k in DISK_KEYS}))
    elif kind == "single":
        system = single_system_from_meta(meta)
    elif kind == "thirds":
        system = thirds_system()
    elif kind == "binary":
        system = binary_system(meta["p_max"])
    else:
        raise CIllusionException(f"cannot rebuild system of kind {kind!r}", ErrCode.CONFIG_ERROR)
    if "kappa" in meta:
        dist = partner.obs_distance if partner is not None else None
        system = coarsen_system(system, make_kappa(KAPPA_TYPE(meta["kappa"])), obs_distance=dist, kappa_name=meta["kappa"])
    return system


def traces_to_dict(run) -> dict:
    return {
        "m": run.m,
        "eps": run.report.eps if run.report is not None else None,
        "secondary": {"system": run.sec_system.meta, "trace": run.sec_trace.to_dict(lossless=True)},
        "primary": {"system": run.pri_system.meta, "trace": run.pri_trace.to_dict(lossless=True)},
    }


def _rebuild_trace(system: CSystem, d: dict) -> CTrace:
    recorded = CTrace.from_dict(d)
    if not recorded.states or recorded.states[0] != system.x0:
        raise CIllusionException(f"recorded {system.name} trace does not start at x0", ErrCode.VERIFICATION_FAILED, step_idx=0)
    trace = replay(system, recorded.actions)
    if trace.states != recorded.states:
        k = next(k for k, (a, b) in enumerate(zip(trace.states, recorded.states)) if a != b)
        raise CIllusionException(f"recorded {system.name} states do not replay", ErrCode.VERIFICATION_FAILED, step_idx=k)
    return trace


def verify_files(witness_path: Union[str, Path], traces_path: Union[str, Path], eps: float = None) -> CIllusionReport:
    witness = load_witness(witness_path)
    try:
        d = orjson.loads(Path(traces_path).read_bytes())
    except OSError as e:
        raise CIllusionException(f"cannot read traces {traces_path}: {e}", ErrCode.IO_ERROR) from e
    except orjson.JSONDecodeError as e:
        raise CIllusionException(f"{traces_path}: invalid JSON at line {e.lineno}: {e.msg}", ErrCode.CONFIG_ERROR) from e
    try:
        sec = system_from_meta(d["secondary"]["system"])
        pri = system_from_meta(d["primary"]["system"], partner=sec)
        sec_trace = _rebuild_trace(sec, d["secondary"]["trace"])
        pri_trace = _rebuild_trace(pri, d["primary"]["trace"])
        m = int(d["m"])
        if eps is None:
            eps = float(d["eps"])
    except (KeyError, TypeError) as e:
        raise CIllusionException(f"traces file {traces_path} is missing {e}", ErrCode.CONFIG_ERROR) from e
    return verify_illusion(sec, sec_trace, pri, pri_trace, m, witness, eps)

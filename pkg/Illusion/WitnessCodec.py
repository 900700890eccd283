from pathlib import Path
from typing import Union

import orjson

from Common.IllusionException import CIllusionException, ErrCode

from .RoleMap import CRoleMapSeq
from .TimeScale import CTimeScale
from .Witness import CWitness

JSON_OPTION = orjson.OPT_INDENT_2 | orjson.OPT_APPEND_NEWLINE


def witness_to_dict(witness: CWitness) -> dict:
    meta = {k: v for k, v in witness.meta.items() if k != "policies"}
    meta["m"] = witness.m
    meta["n_hat"] = witness.n_hat
    return {
        "policies": witness.policy_descriptors(),
        "roles": witness.roles.to_changepoints(),
        "z": witness.timescale.to_list(),
        "meta": meta,
    }


def witness_from_dict(d: dict) -> CWitness:
    """policies come back as descriptors only; the time scaling is re-checked"""
    try:
        z = CTimeScale(d["z"])
        roles = CRoleMapSeq.from_changepoints(d["roles"], len(z))
        meta = dict(d.get("meta", {}))
        meta["policies"] = list(d.get("policies", []))
    except KeyError as e:
        raise CIllusionException(f"witness missing key {e}", ErrCode.CONFIG_ERROR) from e
    return CWitness([], roles, z, meta)


def dump_witness(witness: CWitness, path: Union[str, Path]) -> Path:
    path = Path(path)
    try:
        path.write_bytes(orjson.dumps(witness_to_dict(witness), option=JSON_OPTION))
    except OSError as e:
        raise CIllusionException(f"cannot write witness to {path}: {e}", ErrCode.IO_ERROR) from e
    return path


def load_witness(path: Union[str, Path]) -> CWitness:
    try:
        raw = Path(path).read_bytes()
    except OSError as e:
        raise CIllusionException(f"cannot read witness {path}: {e}", ErrCode.IO_ERROR) from e
    try:
        d = orjson.loads(raw)
    except orjson.JSONDecodeError as e:
        raise CIllusionException(f"witness {path} is not valid JSON: {e}", ErrCode.CONFIG_ERROR) from e
    return witness_from_dict(d)

"""
scenario files: one JSON document per run, validated before anything is simulated
"""
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Union

import orjson
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from Common.CEnum import KAPPA_TYPE, SCENARIO_TYPE
from Common.IllusionException import CIllusionException, ErrCode


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid")


class CaravanSetParams(_Strict):
    n: int = Field(5, ge=1)
    v_min: float = 0.0
    v_max: float = 1.0
    x0: Optional[List[float]] = None
    spacing: float = Field(60.0, gt=0)  # used when x0 is omitted
    primary_v_min: float = 0.0
    primary_v_max: float = 1.0
    policy: Literal["max", "uniform"] = "uniform"

    @model_validator(mode="after")
    def _ranges(self):
        if not self.v_min < self.v_max:
            raise ValueError(f"v_min must be < v_max, got [{self.v_min}, {self.v_max}]")
        if not self.primary_v_min < self.primary_v_max:
            raise ValueError(f"primary_v_min must be < primary_v_max, got [{self.primary_v_min}, {self.primary_v_max}]")
        if self.x0 is not None and len(self.x0) != self.n:
            raise ValueError(f"x0 has {len(self.x0)} entries for n={self.n}")
        return self


class CaravanParams(CaravanSetParams):
    param_sets: List[CaravanSetParams] = []  # sweep only


class ComposeParams(CaravanSetParams):
    j: int = Field(3, ge=1)


class CoarsenParams(CaravanSetParams):
    kappas: List[KAPPA_TYPE] = [KAPPA_TYPE.IDENTITY, KAPPA_TYPE.ROUND, KAPPA_TYPE.CONSTANT]
    cases: int = Field(20, ge=1)


class IdentityParams(_Strict):
    system: Literal["caravan", "disks", "thirds"] = "caravan"
    n: int = Field(4, ge=1)


class DisksParams(_Strict):
    trials: int = Field(10, ge=1)
    strategies: List[Literal["naive", "hungarian", "heuristic"]] = ["naive", "hungarian", "heuristic"]
    robot_counts: Optional[List[int]] = None
    r: float = Field(0.5, gt=0)
    r_hat: Optional[float] = None
    v_max: float = Field(0.1, gt=0)
    dt: float = Field(0.2, gt=0)
    v_wheel_max: float = Field(0.2, gt=0)
    wheelbase: float = Field(0.1, gt=0)
    robot_radius: float = Field(0.05, ge=0)
    workspace: List[float] = [-1.0, 1.0, -1.0, 1.0]
    spacing: float = Field(0.8, gt=0)


class SqueezeParams(_Strict):
    p_max: int = Field(200, ge=1)
    T_values: List[int] = [1, 5, 10, 20]


PARAM_MODELS = {
    SCENARIO_TYPE.IDENTITY: IdentityParams,
    SCENARIO_TYPE.CARAVAN: CaravanParams,
    SCENARIO_TYPE.DISKS: DisksParams,
    SCENARIO_TYPE.SQUEEZE: SqueezeParams,
    SCENARIO_TYPE.COMPOSE: ComposeParams,
    SCENARIO_TYPE.COARSEN: CoarsenParams,
}

ScenarioParams = Union[IdentityParams, CaravanParams, DisksParams, SqueezeParams, ComposeParams, CoarsenParams]


class ScenarioConfig(_Strict):
    scenario: SCENARIO_TYPE
    seed: int = Field(ge=0, lt=2**64)
    horizon: int = Field(ge=0)
    parameters: Dict[str, Any] = {}
    engine: Dict[str, Any] = {}  # CIllusionConfig overrides
    output_dir: Optional[str] = None

    def typed_parameters(self) -> ScenarioParams:
        try:
            return PARAM_MODELS[self.scenario].model_validate(self.parameters)
        except ValidationError as e:
            raise CIllusionException(_format_errors(e, prefix="parameters"), ErrCode.CONFIG_ERROR) from e


def _format_errors(e: ValidationError, prefix: str = "") -> str:
    lines = []
    for err in e.errors():
        loc = ".".join(str(v) for v in ((prefix,) if prefix else ()) + tuple(err["loc"]))
        lines.append(f"{loc or '<root>'}: {err['msg']}")
    return "invalid scenario config: " + "; ".join(lines)


def parse_scenario(raw: dict, seed_override: Optional[int] = None) -> ScenarioConfig:
    if not isinstance(raw, dict):
        raise CIllusionException("scenario config must be a JSON object", ErrCode.CONFIG_ERROR)
    raw = dict(raw)
    if seed_override is not None:
        raw["seed"] = seed_override
    try:
        cfg = ScenarioConfig.model_validate(raw)
    except ValidationError as e:
        raise CIllusionException(_format_errors(e), ErrCode.CONFIG_ERROR) from e
    cfg.typed_parameters()
    return cfg


def load_scenario(path: Union[str, Path], seed_override: Optional[int] = None) -> ScenarioConfig:
    try:
        raw = Path(path).read_bytes()
    except OSError as e:
        raise CIllusionException(f"cannot read scenario {path}: {e}", ErrCode.IO_ERROR) from e
    try:
        data = orjson.loads(raw)
    except orjson.JSONDecodeError as e:
        raise CIllusionException(f"{path}: invalid JSON at line {e.lineno} column {e.colno}: {e.msg}", ErrCode.CONFIG_ERROR) from e
    return parse_scenario(data, seed_override)

from enum import Enum, auto
from typing import Literal


class ARITH_MODE(Enum):
    FLOAT = auto()
    EXACT = auto()


class POLICY_KIND(Enum):
    STATE_FEEDBACK = auto()
    OWN_HISTORY = auto()
    CROSS_SYSTEM = auto()


class SENTINEL(Enum):
    INF = "inf"  # caravan: no robot on that side
    BOTTOM = "bot"  # squeeze: outside every stripe

    def __repr__(self):
        return self.value


class ASSIGN_STRATEGY(Enum):
    NAIVE = "naive"
    HUNGARIAN = "hungarian"
    HEURISTIC = "heuristic"


class SCENARIO_TYPE(Enum):
    IDENTITY = "identity"
    CARAVAN = "caravan"
    DISKS = "disks"
    SQUEEZE = "squeeze"
    COMPOSE = "compose"
    COARSEN = "coarsen"


class KAPPA_TYPE(Enum):
    IDENTITY = "identity"
    ROUND = "round"
    CONSTANT = "constant"


REPORT_FORMAT = Literal['csv', 'json']


class DATA_FIELD:
    FIELD_TRIAL = "trial_id"
    FIELD_STRATEGY = "strategy"
    FIELD_N_PRIMARY = "n_primary"
    FIELD_SEC_STEPS = "secondary_steps"
    FIELD_PRI_STEPS = "primary_steps"
    FIELD_SLOWDOWN_MAX = "slowdown_max"
    FIELD_SLOWDOWN_MEAN = "slowdown_mean"
    FIELD_SEED = "seed"


TIMING_COLUMNS = [
    DATA_FIELD.FIELD_TRIAL,
    DATA_FIELD.FIELD_STRATEGY,
    DATA_FIELD.FIELD_N_PRIMARY,
    DATA_FIELD.FIELD_SEC_STEPS,
    DATA_FIELD.FIELD_PRI_STEPS,
    DATA_FIELD.FIELD_SLOWDOWN_MAX,
    DATA_FIELD.FIELD_SLOWDOWN_MEAN,
    DATA_FIELD.FIELD_SEED,
]

PLATEAU_COLUMNS = ["h", "secondary_step", "plateau_len", "lower_bound_floor_3h_2", "state_num", "state_den"]

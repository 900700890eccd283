from enum import IntEnum


class ErrCode(IntEnum):
    # system err
    _SYS_ERR_BEGIN = 0
    COMMON_ERROR = 1
    DIMENSION_MISMATCH = 2
    INVALID_ACTION = 3
    INVALID_HORIZON = 4
    PARA_ERROR = 5
    INVALID_PARAMS = 6
    _SYS_ERR_END = 99

    # illusion err
    _ILLUSION_ERR_BEGIN = 100
    ROLE_OUT_OF_RANGE = 101
    TIME_OUT_OF_RANGE = 102
    TIMESCALE_ERR = 103
    INSUFFICIENT_DATA = 104
    ARITY_MISMATCH = 105
    NO_TRIALS = 106
    _ILLUSION_ERR_END = 199

    # orchestration err
    _ORCH_ERR_BEGIN = 200
    UNREACHABLE_OFFSET = 201
    INSUFFICIENT_ROBOTS = 202
    NON_FINITE_COST = 203
    PLATEAU_TIMEOUT = 204
    NEGATIVE_STATE = 205
    NON_DYADIC_START = 206
    CHASE_PRECISION = 207
    BOUND_VIOLATED = 208
    _ORCH_ERR_END = 299

    # runner err
    _RUNNER_ERR_BEGIN = 300
    CONFIG_ERROR = 301
    VERIFICATION_FAILED = 302
    IO_ERROR = 303
    EMPTY_RECORDS = 304
    _RUNNER_ERR_END = 399


class CIllusionException(Exception):
    def __init__(self, message, code=ErrCode.COMMON_ERROR, robot_idx=None, step_idx=None):
        self.errcode = code
        self.msg = message
        self.robot_idx = robot_idx
        self.step_idx = step_idx
        Exception.__init__(self, message)

    def __str__(self):
        extra = []
        if self.robot_idx is not None:
            extra.append(f"robot={self.robot_idx}")
        if self.step_idx is not None:
            extra.append(f"step={self.step_idx}")
        return f"{self.msg} ({', '.join(extra)})" if extra else self.msg

    def is_system_err(self):
        return ErrCode._SYS_ERR_BEGIN < self.errcode < ErrCode._SYS_ERR_END

    def is_orchestration_err(self):
        return ErrCode._ORCH_ERR_BEGIN < self.errcode < ErrCode._ORCH_ERR_END

    def is_verify_err(self):
        return self.errcode == ErrCode.VERIFICATION_FAILED

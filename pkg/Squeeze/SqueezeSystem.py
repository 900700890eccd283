from fractions import Fraction

from Common.CEnum import ARITH_MODE
from Common.IllusionException import CIllusionException, ErrCode
from Common.func_util import dyadic_exponent
from System.SystemDef import CSystem

from .Sensor import h_sqz

THIRDS_ACTIONS = (Fraction(-1, 3), Fraction(0), Fraction(1, 3))


def _is_rational(u) -> bool:
    return isinstance(u, (Fraction, int)) and not isinstance(u, bool)


def _add(x, i, u):
    return x[i] + u


def _observe(x, i):
    return h_sqz(x[i])


def _non_negative(_i, x_i) -> bool:
    return x_i >= 0


def thirds_system() -> CSystem:
    def _valid(_i, u):
        return _is_rational(u) and Fraction(u) in THIRDS_ACTIONS

    return CSystem(
        name="thirds",
        n=1,
        robot_transition=_add,
        robot_observe=_observe,
        action_valid=_valid,
        x0=(Fraction(0),),
        arith_mode=ARITH_MODE.EXACT,
        state_valid=_non_negative,
        state_desc="R+",
        meta={"kind": "thirds"},
    )


def binary_system(p_max: int = 200) -> CSystem:
    """steps +-2^-p for integer |p| <= p_max"""
    if p_max < 1:
        raise CIllusionException(f"p_max must be >= 1, got {p_max}", ErrCode.INVALID_PARAMS)

    def _valid(_i, u):
        if not _is_rational(u):
            return False
        p = dyadic_exponent(u)
        return p is not None and abs(p) <= p_max

    return CSystem(
        name="binary",
        n=1,
        robot_transition=_add,
        robot_observe=_observe,
        action_valid=_valid,
        x0=(Fraction(0),),
        arith_mode=ARITH_MODE.EXACT,
        state_valid=_non_negative,
        state_desc="R+",
        meta={"kind": "binary", "p_max": p_max},
    )

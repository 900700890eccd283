from fractions import Fraction
from typing import Union

from Common.CEnum import SENTINEL
from Common.IllusionException import CIllusionException, ErrCode

SqueezeObs = Union[int, SENTINEL]


def stripe_halfwidth(q: int) -> Fraction:
    return Fraction(1, 4 * 2**q)


def h_sqz(x) -> SqueezeObs:
    """
    q if x lies within 1/(4*2^q) of q/3 for some integer q >= 1, else BOTTOM
    stripes are disjoint, only floor(3x) +- 1 can hold x
    """
    x = Fraction(x)
    if x < 0:
        raise CIllusionException(f"squeeze sensor is defined on non-negative states, got {x}", ErrCode.NEGATIVE_STATE)
    base = (3 * x.numerator) // x.denominator
    for q in (base-1, base, base+1):
        if q >= 1 and abs(x - Fraction(q, 3)) <= stripe_halfwidth(q):
            return q
    return SENTINEL.BOTTOM


def chase_tolerance(target) -> Fraction:
    """how close the chaser must get to target to read the same observation"""
    q = h_sqz(target)
    if q == SENTINEL.BOTTOM:
        if Fraction(target) == 0:
            return Fraction(1, 8)  # [0, 1/8] reads bottom
        raise CIllusionException(f"no chase tolerance for bottom-class target {target}", ErrCode.CHASE_PRECISION)
    return stripe_halfwidth(q)

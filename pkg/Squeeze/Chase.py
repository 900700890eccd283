from fractions import Fraction
from typing import List

from Common.IllusionException import CIllusionException, ErrCode
from Common.func_util import is_dyadic


def binary_chase(target, current, tolerance, p_max: int = 200) -> List[Fraction]:
    """
    greedy: take the largest step 2^-p (p = 0, 1, ..., p_max) toward target that does not overshoot,
    until |current - target| <= tolerance
    """
    target, current, tolerance = Fraction(target), Fraction(current), Fraction(tolerance)
    if not is_dyadic(current):
        raise CIllusionException(f"chase must start from a dyadic rational, got {current}", ErrCode.NON_DYADIC_START)
    if tolerance <= 0:
        raise CIllusionException(f"chase tolerance must be positive, got {tolerance}", ErrCode.CHASE_PRECISION)

    steps = []
    while abs(target - current) > tolerance:
        gap = abs(target - current)
        p = 0
        while Fraction(1, 2**p) > gap:
            p += 1
            if p > p_max:
                raise CIllusionException(f"gap {gap} needs a step finer than 2^-{p_max}", ErrCode.CHASE_PRECISION)
        u = Fraction(1, 2**p) if target > current else -Fraction(1, 2**p)
        steps.append(u)
        current += u
    return steps

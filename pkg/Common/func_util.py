import math
from fractions import Fraction

import numpy as np

from .CEnum import SENTINEL

MASK64 = (1 << 64) - 1


def make_rng(seed, *stream) -> np.random.Generator:
    # every random draw in the repo goes through PCG64
    return np.random.Generator(np.random.PCG64([int(seed) & MASK64, *[zigzag(s) for s in stream]]))


def trial_seed(seed, trial_idx):
    return (int(seed) ^ int(trial_idx)) & MASK64


def zigzag(i: int) -> int:
    # maps Z onto N so negative cell indices can feed a SeedSequence
    return 2 * i if i >= 0 else -2 * i - 1


def wrap_angle(a):
    a = math.fmod(a + math.pi, 2 * math.pi)
    if a <= 0:
        a += 2 * math.pi
    return a - math.pi


def is_power_of_two(v: int) -> bool:
    return v > 0 and v & (v - 1) == 0


def dyadic_exponent(x: Fraction):
    """p such that |x| == 2**-p, None if |x| is not a power of two"""
    x = abs(Fraction(x))
    if x == 0:
        return None
    if x.numerator == 1 and is_power_of_two(x.denominator):
        return x.denominator.bit_length() - 1
    if x.denominator == 1 and is_power_of_two(x.numerator):
        return -(x.numerator.bit_length() - 1)
    return None


def is_dyadic(x: Fraction) -> bool:
    return is_power_of_two(Fraction(x).denominator)


def fmt_value(v, lossless=False):
    """Render a value for CSV/JSON output."""
    if isinstance(v, SENTINEL):
        return v.value
    if isinstance(v, bool) or v is None:
        return v
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    if isinstance(v, (float, np.floating)):
        v = float(v)
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return v if lossless else float(f"{v:.12g}")
    if isinstance(v, (int, np.integer)):
        return int(v)
    if isinstance(v, dict):
        return {str(k): fmt_value(x, lossless) for k, x in v.items()}
    if isinstance(v, (tuple, list)):
        return [fmt_value(x, lossless) for x in v]
    return v


def parse_value(v):
    """Inverse of fmt_value(lossless=True) for the value kinds found in traces."""
    if isinstance(v, str):
        if v == SENTINEL.INF.value:
            return SENTINEL.INF
        if v == SENTINEL.BOTTOM.value:
            return SENTINEL.BOTTOM
        if "/" in v:
            num, den = v.split("/")
            return Fraction(int(num), int(den))
        return v
    if isinstance(v, list):
        return tuple(parse_value(x) for x in v)
    return v

from typing import Callable, List, Set, Tuple

from Common.IllusionException import CIllusionException, ErrCode
from System.Evolve import rollout
from System.Policy import CPolicy
from System.SystemDef import CSystem


def perceptual_sample(system: CSystem, policy_generator: Callable[[int], List[CPolicy]], horizon: int, trials: int) -> Set:
    """
    under-approximation of the observations a system can produce:
    every robot observation seen across `trials` rollouts, policy_generator(trial) gives the policies
    """
    if trials < 1:
        raise CIllusionException(f"perceptual sampling needs at least one trial, got {trials}", ErrCode.NO_TRIALS)
    seen = set()
    for trial in range(trials):
        trace = rollout(system, policy_generator(trial), horizon)
        for y in trace.observations:
            seen.update(y)
    return seen


def perceptual_inclusion(sec_sample: Set, pri_sample: Set) -> Tuple[bool, Set]:
    """an illusion needs every secondary percept to occur in the primary"""
    missing = set(sec_sample) - set(pri_sample)
    return not missing, missing

import logging
import math

import numpy as np

from errors import ValidationError
from model.step import ScaledStepPotential
from spectrum import SecularInterface, SpectrumResult
from spectrum.roots import isolate_roots

log = logging.getLogger(__name__)


class StepSecular(SecularInterface):
    """sin(k*omega1) - r*sin(k*omega2) for the single scaled step."""

    def __init__(self, pot: ScaledStepPotential):
        self.pot = pot

    def evaluate(self, k):
        pot = self.pot
        return np.sin(k * pot.omega1) - pot.r * np.sin(k * pot.omega2)

    def derivative(self, k):
        pot = self.pot
        return pot.omega1 * np.cos(k * pot.omega1) - pot.r * pot.omega2 * np.cos(k * pot.omega2)

    def weyl_slope(self):
        return self.pot.weyl_slope()

    def residual_tolerance(self):
        return 1e-10 * (1.0 + self.pot.omega1)


def secular(pot: ScaledStepPotential, k):
    return StepSecular(pot).evaluate(k)


def secular_z1(pot: ScaledStepPotential, k):
    """
        Unreduced matching condition cos(kb) sin[kappa(1-b)] + (kappa/k) sin(kb) cos[kappa(1-b)].
        Equals (1+beta)/2 times `secular`.
    """
    kappa_length = pot.beta * (1.0 - pot.b) * np.asarray(k)
    return np.cos(k * pot.b) * np.sin(kappa_length) + pot.beta * np.sin(k * pot.b) * np.cos(kappa_length)


def weyl_count(pot: ScaledStepPotential, k: float) -> float:
    if k < 0.0:
        raise ValidationError('k', f'must be non-negative, got {k}')
    return pot.omega1 * k / math.pi


def exact_count(pot: ScaledStepPotential, k: float) -> int:
    """
        Number of roots in (0, k]. The phase omega1*k + arg(1 - r exp(-2i l2 k))
        increases strictly, and every root is a crossing of a multiple of pi.
    """
    if k <= 0.0:
        return 0
    phase = pot.omega1 * k + math.atan2(pot.r * math.sin(2.0 * pot.l2 * k), 1.0 - pot.r * math.cos(2.0 * pot.l2 * k))
    return int(math.floor(phase / math.pi))


def find_roots(pot: ScaledStepPotential, k_max: float, threads: int = 1) -> SpectrumResult:
    """
        All roots of the secular equation in (0, k_max].

    :param pot:
    :param k_max:
    :param threads:
    :return:
    """
    return isolate_roots(StepSecular(pot), k_max, threads=threads, expected_count=exact_count(pot, k_max))


def first_roots(pot: ScaledStepPotential, count: int, threads: int = 1) -> np.ndarray:
    """The lowest `count` roots; the cutoff is placed half a spacing past the last one."""
    if count < 1:
        raise ValidationError('count', f'must be at least 1, got {count}')
    k_max = (count + 1.0) * math.pi / pot.omega1
    roots = find_roots(pot, k_max, threads=threads).roots
    return roots[:count]

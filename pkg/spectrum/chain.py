import logging

import numpy as np

from graph.chain import build_model
from model import PotentialInterface
from spectrum import SecularInterface, SpectrumResult
from spectrum.roots import isolate_roots

log = logging.getLogger(__name__)

BATCH = 65536
DIFFERENCE_STEP = 1e-6


class ChainSecular(SecularInterface):
    """
        Real projection of det(1 - S(k)) exp(-iLk), L the total weighted length.
        With det S(k) = det S(0) exp(2iLk) that product is real when det S(0) = +1
        and imaginary when det S(0) = -1.
    """

    def __init__(self, pot: PotentialInterface):
        self.pot = pot
        self.model = build_model(pot)
        self.real_part = np.linalg.det(self.model.scattering) > 0.0

    def _reduced_determinant(self, k):
        k = np.atleast_1d(np.asarray(k, dtype=float))
        identity = np.eye(self.model.dimension)
        values = np.empty(k.shape, dtype=complex)
        for begin in range(0, len(k), BATCH):
            block = k[begin:begin + BATCH]
            values[begin:begin + BATCH] = np.linalg.det(identity - self.model.smatrix(block))
        return values * np.exp(-1j * self.model.total_length * k)

    def evaluate(self, k):
        scalar = np.ndim(k) == 0
        reduced = self._reduced_determinant(k)
        values = reduced.real if self.real_part else reduced.imag
        return float(values[0]) if scalar else values

    def derivative(self, k):
        return (self.evaluate(np.asarray(k) + DIFFERENCE_STEP) -
                self.evaluate(np.asarray(k) - DIFFERENCE_STEP)) / (2.0 * DIFFERENCE_STEP)

    def weyl_slope(self):
        return self.pot.weyl_slope()

    def residual_tolerance(self):
        return 1e-9 * 4.0 ** len(self.model.bond_lengths)


def nstep_find_roots(pot: PotentialInterface, k_max: float, threads: int = 1) -> SpectrumResult:
    """
        Roots of det(1 - S(k)) = 0 in (0, k_max] for any chain potential.
    """
    log.debug(" nstep_find_roots -- %s bonds up to k=%s", len(pot.bond_lengths()), k_max)
    return isolate_roots(ChainSecular(pot), k_max, threads=threads)

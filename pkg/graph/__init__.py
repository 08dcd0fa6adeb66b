from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True, eq=False)
class GraphScatteringModel:
    """
        Quantum graph of a chain potential: bonds between consecutive vertices,
        Dirichlet dead ends at both walls.

        `scattering` is the k-independent vertex part of S in the directed-bond
        basis, `phase_lengths` the length of the outgoing bond of every basis
        element, so that S(k) = diag(exp(i*l*k)) @ scattering.
    """
    connectivity: np.ndarray
    vertex_blocks: tuple
    bond_lengths: np.ndarray
    scattering: np.ndarray
    phase_lengths: np.ndarray
    basis: tuple

    @property
    def dimension(self):
        return 2 * len(self.bond_lengths)

    @property
    def total_length(self):
        return float(np.sum(self.bond_lengths))

    def smatrix(self, k):
        """
            S(k) for a scalar k (real or complex) or a stack of them.
        :param k:
        :return: (d, d) or (len(k), d, d) complex array
        """
        k = np.asarray(k)
        phases = np.exp(1j * np.multiply.outer(k, self.phase_lengths))
        return phases[..., :, None] * self.scattering

import functools
import logging
import math

import numpy as np

from errors import ValidationError
from graph import GraphScatteringModel
from model import PotentialInterface
from model.step import ScaledStepPotential
from orbits.record import word_census

log = logging.getLogger(__name__)

MAX_ORBIT_TRACE_LENGTH = 24

# (into-centre bond 1, into-centre bond 2, out of centre bond 1, out of centre bond 2)
STEP_BLOCK_ORDER = (0, 3, 2, 1)


def _chain_scattering(lengths, coefficients):
    """
        Vertex scattering in the basis (f_1..f_N, g_1..g_N) with f_j running
        rightwards on bond j and g_j leftwards.
    """
    bonds = len(lengths)
    f = list(range(bonds))
    g = [bonds + j for j in range(bonds)]
    scattering = np.zeros((2 * bonds, 2 * bonds))

    scattering[f[0], g[0]] = -1.0
    scattering[g[-1], f[-1]] = -1.0
    for vertex, (r, t) in enumerate(coefficients, start=1):
        left, right = vertex - 1, vertex
        scattering[g[left], f[left]] = r
        scattering[g[left], g[right]] = t
        scattering[f[right], f[left]] = t
        scattering[f[right], g[right]] = -r

    phase_lengths = np.concatenate([lengths, lengths])
    return scattering, phase_lengths


@functools.lru_cache(maxsize=64)
def build_model(pot: PotentialInterface) -> GraphScatteringModel:
    """
        Builds the graph of a step or N-step potential. The single step uses the
        block form [[0, -D], [D sigma, 0]]; chains use (bond->..., bond<-...).

    :param pot:
    :return:
    """
    lengths = np.asarray(pot.bond_lengths(), dtype=float)
    coefficients = pot.vertex_coefficients()
    bonds = len(lengths)

    connectivity = np.zeros((bonds + 1, bonds + 1), dtype=int)
    for vertex in range(bonds):
        connectivity[vertex, vertex + 1] = connectivity[vertex + 1, vertex] = 1

    blocks = [np.array([[-1.0]])]
    blocks.extend(np.array([[r, t], [t, -r]]) for r, t in coefficients)
    blocks.append(np.array([[-1.0]]))

    scattering, phase_lengths = _chain_scattering(lengths, coefficients)
    basis = tuple(f'bond{j + 1}->' for j in range(bonds)) + tuple(f'bond{j + 1}<-' for j in range(bonds))

    if isinstance(pot, ScaledStepPotential):
        order = list(STEP_BLOCK_ORDER)
        scattering = scattering[np.ix_(order, order)]
        phase_lengths = phase_lengths[order]
        basis = tuple(basis[index] for index in order)

    return GraphScatteringModel(
        connectivity=connectivity,
        vertex_blocks=tuple(blocks),
        bond_lengths=lengths,
        scattering=scattering,
        phase_lengths=phase_lengths,
        basis=basis)


def build_smatrix(pot: PotentialInterface, k):
    return build_model(pot).smatrix(k)


def det_one_minus_s(pot: PotentialInterface, k):
    """
        det(1 - S(k)); vanishes exactly on the spectrum. k may be complex or an array.
    """
    model = build_model(pot)
    matrices = model.smatrix(k)
    return np.linalg.det(np.eye(model.dimension) - matrices)


def trace_power(pot: PotentialInterface, k: float, n: int) -> complex:
    if n < 1:
        raise ValidationError('n', f'power must be at least 1, got {n}')
    return complex(np.trace(np.linalg.matrix_power(build_smatrix(pot, k), n)))


def orbit_trace_sum(pot: ScaledStepPotential, k: float, n: int) -> complex:
    """
        Tr S^(2n) written as a sum over the binary words of length n:
        2 * sum_w (-1)^chi r^sigma t^(2 tau) exp(2ik(n_L l1 + n_R l2)).

    :param pot:
    :param k:
    :param n: word length, 1..24
    :return:
    """
    if not isinstance(pot, ScaledStepPotential):
        raise ValidationError('pot', 'orbit sums are defined for the single-step potential only')
    if not 1 <= n <= MAX_ORBIT_TRACE_LENGTH:
        raise ValidationError('n', f'word length must lie in [1, {MAX_ORBIT_TRACE_LENGTH}], got {n}')

    total = 0j
    for entry in word_census(n):
        weight = entry.sign * pot.r ** entry.sigma * pot.t ** entry.tau2
        if weight == 0.0:
            continue
        action = 2.0 * (entry.n_L * pot.l1 + entry.n_R * pot.l2)
        total += entry.multiplicity * weight * complex(math.cos(action * k), math.sin(action * k))
    return 2.0 * total


def counting_function(pot: PotentialInterface, k: float, n_max: int) -> float:
    """
        Spectral staircase from the truncated series
        N = slope*k - 1/2 + (1/pi) Im sum_{n<=n_max} Tr S^n / n.
    """
    if n_max < 1:
        raise ValidationError('n_max', f'must be at least 1, got {n_max}')
    smatrix = build_smatrix(pot, k)
    power = np.eye(smatrix.shape[0], dtype=complex)
    series = 0j
    for n in range(1, n_max + 1):
        power = power @ smatrix
        series += np.trace(power) / n
    return pot.weyl_slope() * k - 0.5 + series.imag / math.pi

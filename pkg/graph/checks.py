import logging
from dataclasses import asdict, dataclass

import numpy as np

from errors import ValidationError
from graph.chain import build_smatrix, det_one_minus_s, orbit_trace_sum, trace_power
from model.step import ScaledStepPotential
from orbits.record import shortest_orbits
from spectrum.step import first_roots
from traceformula.zeta import zeta_expanded

log = logging.getLogger(__name__)

ZETA_CODE_LENGTH = 6


@dataclass(frozen=True)
class GraphCheckReport:
    """Largest deviation seen for every matrix-versus-orbit property."""
    samples: int
    k_max: float
    n_max: int
    seed: int
    unitarity: float
    odd_trace: float
    even_trace_vs_orbit_sum: float
    det_at_roots: float
    roots_checked: int
    zeta_vs_det: float = 0.0

    def as_dict(self):
        return asdict(self)


def unitarity_defect(pot, k) -> float:
    smatrix = build_smatrix(pot, k)
    return float(np.linalg.norm(smatrix.conj().T @ smatrix - np.eye(smatrix.shape[0]), ord=2))


def oracle_deviations(pot: ScaledStepPotential, samples: int = 100, k_max: float = 100.0, n_max: int = 12,
                      seed: int = 0, roots_checked: int = 100) -> GraphCheckReport:
    """
        Samples k uniformly in [0, k_max] and compares the graph S-matrix with
        the orbit sums and with the secular roots.

    :param pot:
    :param samples: number of random k
    :param k_max:
    :param n_max: largest word length n compared as Tr S^(2n)
    :param seed:
    :param roots_checked: det(1-S) is evaluated at this many lowest roots
    :return:
    """
    if samples < 1:
        raise ValidationError('samples', f'must be at least 1, got {samples}')
    if n_max < 1:
        raise ValidationError('n_max', f'must be at least 1, got {n_max}')

    ks = np.random.default_rng(seed).uniform(0.0, k_max, size=samples)
    unitarity = odd_trace = even_trace = 0.0
    for k in ks:
        unitarity = max(unitarity, unitarity_defect(pot, k))
        for n in range(1, n_max + 1):
            odd_trace = max(odd_trace, abs(trace_power(pot, k, 2 * n + 1)))
            even_trace = max(even_trace, abs(trace_power(pot, k, 2 * n) - orbit_trace_sum(pot, k, n)))

    roots = first_roots(pot, roots_checked)
    det_at_roots = float(np.max(np.abs(det_one_minus_s(pot, roots))))

    orbits = shortest_orbits(pot, max_length=ZETA_CODE_LENGTH)
    zeta_vs_det = float(np.max(np.abs(zeta_expanded(pot, orbits, ks, ZETA_CODE_LENGTH) - det_one_minus_s(pot, ks))))

    log.info(" oracle_deviations -- unitarity %s, odd traces %s, orbit sums %s, det at roots %s, zeta %s",
             unitarity, odd_trace, even_trace, det_at_roots, zeta_vs_det)
    return GraphCheckReport(
        samples=samples, k_max=float(k_max), n_max=n_max, seed=seed,
        unitarity=unitarity, odd_trace=odd_trace, even_trace_vs_orbit_sum=even_trace,
        det_at_roots=det_at_roots, roots_checked=len(roots), zeta_vs_det=zeta_vs_det)

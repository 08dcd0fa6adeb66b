import logging
import math

import numpy as np

from errors import PoleProximityError, ValidationError
from model.step import ScaledStepPotential
from orbits.record import amplitude, newtonian_action
from traceformula import DensityProfile, Truncation
from utility import local_maxima

log = logging.getLogger(__name__)

POLE_DISTANCE = 1e-6


def _validate_grid(k_grid, eta):
    k = np.asarray(k_grid, dtype=float)
    if k.ndim != 1 or len(k) == 0:
        raise ValidationError('k_grid', 'must be a non-empty one-dimensional grid')
    if np.any(k <= 0.0):
        raise ValidationError('k_grid', 'the density is singular at k = 0; use a grid of positive k')
    if np.any(np.diff(k) <= 0.0):
        raise ValidationError('k_grid', 'must be strictly increasing')
    if eta < 0.0:
        raise ValidationError('eta', f'smoothing must be non-negative, got {eta}')
    return k


def _orbit_terms(pot, orbits, k, eta):
    """Per-orbit period T_p(k), amplitude A_p and phase exp(i S0_p (k + i eta))."""
    actions = np.array([rec.S0 for rec in orbits], dtype=float)
    amplitudes = np.array([amplitude(rec, pot) for rec in orbits], dtype=float)
    periods = actions[:, None] / (2.0 * k[None, :])
    phases = np.exp(1j * actions[:, None] * (k[None, :] + 1j * eta))
    return periods, amplitudes[:, None], phases


def _finish(pot, k, oscillating, truncation, eta, k_domain):
    values = pot.omega1 / (2.0 * math.pi * k) + oscillating / math.pi
    if k_domain:
        values = values * 2.0 * k
    return DensityProfile(k_grid=k, values=values, truncation=truncation, smoothing=eta, k_domain=k_domain)


def mean_density(pot: ScaledStepPotential, k):
    return pot.omega1 / (2.0 * math.pi * np.asarray(k, dtype=float))


def rho_trace(pot: ScaledStepPotential, orbits, nu_max: int, k_grid, eta: float = 0.0, k_domain: bool = False,
              max_length: int = None) -> DensityProfile:
    """
        Ray-splitting trace formula truncated to the given primitive orbits and
        nu_max repetitions:
        rho = rho_bar + (1/pi) Re sum_p T_p sum_nu [sign r^sigma t^(2tau)]^nu exp(i nu S0_p k).

    :param pot:
    :param orbits: primitive OrbitRecords
    :param nu_max:
    :param k_grid: strictly increasing positive k
    :param eta: imaginary shift of k, 0 for the raw truncation
    :param k_domain: multiply by 2k to get the density per unit k
    :param max_length: recorded in the truncation descriptor
    :return:
    """
    if nu_max < 1:
        raise ValidationError('nu_max', f'must be at least 1, got {nu_max}')
    k = _validate_grid(k_grid, eta)
    truncation = Truncation(max_length=max_length, count=len(orbits), nu_max=nu_max)

    oscillating = np.zeros(len(k))
    if orbits:
        periods, amplitudes, phases = _orbit_terms(pot, orbits, k, eta)
        step = amplitudes * phases
        term = np.ones_like(step)
        partial = np.zeros_like(step)
        for _ in range(nu_max):
            term = term * step
            partial += term
        oscillating = np.sum(periods * partial.real, axis=0)
    return _finish(pot, k, oscillating, truncation, eta, k_domain)


def rho_resummed(pot: ScaledStepPotential, orbits, k_grid, eta: float = 0.0, k_domain: bool = False,
                 max_length: int = None) -> DensityProfile:
    """
        Same sum with the repetitions summed as a geometric series,
        T_p A_p e^{iS_p} / (1 - A_p e^{iS_p}).
        Grid points within 1e-6 of a pole are rejected.
    """
    k = _validate_grid(k_grid, eta)
    truncation = Truncation(max_length=max_length, count=len(orbits), resummed=True)

    oscillating = np.zeros(len(k))
    if orbits:
        periods, amplitudes, phases = _orbit_terms(pot, orbits, k, eta)
        step = amplitudes * phases
        distance = np.abs(1.0 - step)
        if np.any(distance < POLE_DISTANCE):
            bad = k[np.any(distance < POLE_DISTANCE, axis=0)]
            log.warning(" rho_resummed -- %s grid points sit on a geometric-series pole", len(bad))
            raise PoleProximityError(f'{len(bad)} grid points lie within {POLE_DISTANCE} of a pole',
                                     k=[float(value) for value in bad[:20]])
        oscillating = np.sum(periods * (step / (1.0 - step)).real, axis=0)
    return _finish(pot, k, oscillating, truncation, eta, k_domain)


def newtonian_prediction(pot: ScaledStepPotential, m_max: int):
    """
        Levels predicted by the Newtonian orbit alone: k = 2 pi m / S0_N, S0_N = 2 omega1.
    """
    if m_max < 1:
        raise ValidationError('m_max', f'must be at least 1, got {m_max}')
    period = newtonian_action(pot)
    return [2.0 * math.pi * m / period for m in range(1, m_max + 1)]


def density_peaks(profile: DensityProfile):
    """Parabolic-refined positions of the local maxima of a profile."""
    positions, _ = local_maxima(profile.k_grid, profile.values)
    return positions

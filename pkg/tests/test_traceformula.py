import math

import numpy as np
import pytest

from errors import PoleProximityError, ValidationError
from model.step import build_potential
from orbits import OrbitCode
from orbits.record import orbit_records, shortest_orbits
from spectrum.step import first_roots
from traceformula.density import density_peaks, mean_density, newtonian_prediction, rho_resummed, rho_trace
from utility import local_maxima


def test_empty_orbit_set_is_the_mean_density(fig_pot):
    k = np.linspace(1.0, 20.0, 50)
    profile = rho_trace(fig_pot, [], 10, k)
    np.testing.assert_allclose(profile.values, mean_density(fig_pot, k))
    assert profile.truncation.count == 0


def test_k_domain_multiplies_by_2k(fig_pot):
    orbits = shortest_orbits(fig_pot, max_length=3)
    k = np.linspace(1.0, 20.0, 50)
    energy = rho_trace(fig_pot, orbits, 5, k, eta=0.05)
    wavenumber = rho_trace(fig_pot, orbits, 5, k, eta=0.05, k_domain=True)
    np.testing.assert_allclose(wavenumber.values, 2.0 * k * energy.values)


@pytest.mark.parametrize('grid', [[0.0, 1.0], [2.0, 1.0], []])
def test_grid_validation(fig_pot, grid):
    with pytest.raises(ValidationError):
        rho_trace(fig_pot, [], 10, grid)


def test_rejects_bad_truncation(fig_pot):
    with pytest.raises(ValidationError):
        rho_trace(fig_pot, [], 0, [1.0, 2.0])
    with pytest.raises(ValidationError):
        rho_trace(fig_pot, [], 5, [1.0, 2.0], eta=-0.1)


def test_newtonian_orbit_alone_gives_the_free_comb(free_pot):
    newtonian = orbit_records([OrbitCode('LR')], free_pot)
    k = np.arange(1.0, 20.0, 1e-3)
    profile = rho_trace(free_pot, newtonian, 50, k, k_domain=True)
    peaks = density_peaks(profile)
    comb = math.pi * np.arange(1, 7)
    assert len(peaks) >= len(comb)
    for expected in comb:
        assert min(abs(peak - expected) for peak in peaks) < 2e-3


def test_newtonian_prediction(fig_pot, free_pot, poisson_pot):
    assert newtonian_prediction(free_pot, 3) == pytest.approx([math.pi, 2 * math.pi, 3 * math.pi])
    comb = newtonian_prediction(fig_pot, 2)
    assert comb[0] == pytest.approx(3.4442, abs=1e-4)
    assert comb[1] - comb[0] == pytest.approx(3.4442, abs=1e-4)
    assert newtonian_prediction(poisson_pot, 5) == pytest.approx(first_roots(poisson_pot, 5).tolist(), abs=1e-9)
    with pytest.raises(ValidationError):
        newtonian_prediction(fig_pot, 0)


def test_density_peaks_follow_the_spectrum(fig_pot):
    """Orbits to code length 7 resolve each of the first 20 levels within a quarter spacing."""
    orbits = shortest_orbits(fig_pot, max_length=7)
    roots = first_roots(fig_pot, 20)
    k = np.arange(1.0, roots[-1] + 2.0, 2e-3)
    peaks = np.array(density_peaks(rho_trace(fig_pot, orbits, 10, k)))
    tolerance = 0.25 * math.pi / fig_pot.omega1
    for root in roots:
        assert np.min(np.abs(peaks - root)) < tolerance

    comb = np.array(newtonian_prediction(fig_pot, 20))
    assert np.max(np.abs(comb - roots)) > 0.1


@pytest.mark.parametrize('b, lam, eta', [(0.5, 0.75, 0.0), (0.7, 0.5, 0.05)])
def test_resummed_matches_long_repetition_sums(b, lam, eta):
    pot = build_potential(b, lam)
    orbits = shortest_orbits(pot, max_length=6)
    k = np.linspace(1.0, 30.0, 1000)
    truncated = rho_trace(pot, orbits, 200, k, eta=eta)
    resummed = rho_resummed(pot, orbits, k, eta=eta)
    np.testing.assert_allclose(resummed.values, truncated.values, rtol=0, atol=1e-6)
    assert resummed.truncation.resummed


def test_resummed_finite_on_fig_configuration(fig_pot):
    orbits = shortest_orbits(fig_pot, max_length=5)
    profile = rho_resummed(fig_pot, orbits, np.linspace(0.5, 40.0, 2000))
    assert np.all(np.isfinite(profile.values))


def test_resummed_rejects_poles(free_pot):
    newtonian = orbit_records([OrbitCode('LR')], free_pot)
    with pytest.raises(PoleProximityError):
        rho_resummed(free_pot, newtonian, [1.0, math.pi, 4.0])


def test_resummed_zero_amplitudes_give_the_mean(free_pot):
    reflecting = orbit_records([OrbitCode('L'), OrbitCode('LLR')], free_pot)
    k = np.linspace(1.0, 10.0, 20)
    np.testing.assert_allclose(rho_resummed(free_pot, reflecting, k).values, mean_density(free_pot, k))


def test_local_maxima_refines_between_samples():
    x = np.linspace(0.0, 1.0, 11)
    y = -(x - 0.43) ** 2
    positions, indices = local_maxima(x, y)
    assert indices.tolist() == [4]
    assert positions[0] == pytest.approx(0.43)

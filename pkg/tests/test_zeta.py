import math

import numpy as np
import pytest

from errors import ExpansionOverflowError, ValidationError
from graph.chain import det_one_minus_s
from orbits import OrbitCode
from orbits.record import amplitude, orbit_records, shortest_orbits
from spectrum.step import first_roots
from traceformula.zeta import cycle_expansion, zeta, zeta_expanded
from utility import local_minima


def test_empty_product(fig_pot):
    assert zeta(fig_pot, [], 2.0 + 0.1j) == 1.0


def test_newtonian_free_well(free_pot):
    newtonian = orbit_records([OrbitCode('LR')], free_pot)
    k = np.array([math.pi, 2.0 * math.pi, 1.0])
    values = zeta(free_pot, newtonian, k)
    np.testing.assert_allclose(values, 1.0 - np.exp(2j * k), atol=1e-15)
    assert np.all(np.abs(values[:2]) < 1e-12)


def test_single_orbit_expansion(fig_pot):
    orbits = orbit_records([OrbitCode('LR')], fig_pot)
    expansion = cycle_expansion(fig_pot, orbits, variable='t', max_power=4)
    assert [power for power, _ in expansion.groups] == [0, 2]
    k = 1.7
    groups = expansion.group_values(k)
    assert groups[0] == pytest.approx(1.0)
    assert groups[2] == pytest.approx(-amplitude(orbits[0], fig_pot) * np.exp(1j * orbits[0].S0 * k))


def test_two_orbit_expansion(fig_pot):
    orbits = orbit_records([OrbitCode('L'), OrbitCode('R')], fig_pot)
    expansion = cycle_expansion(fig_pot, orbits, variable='r', max_power=2)
    assert [power for power, _ in expansion.groups] == [0, 1, 2]
    assert len(expansion.terms) == 4
    k = np.linspace(0.5, 9.0, 7)
    np.testing.assert_allclose(expansion.evaluate(k), zeta(fig_pot, orbits, k), atol=1e-14)


def test_power_truncation_drops_the_pair(fig_pot):
    orbits = orbit_records([OrbitCode('L'), OrbitCode('R')], fig_pot)
    expansion = cycle_expansion(fig_pot, orbits, variable='r', max_power=1)
    assert len(expansion.terms) == 3
    assert all(term.r_power <= 1 for term in expansion.terms)


def test_tail_bound_covers_discarded_terms(fig_pot):
    orbits = shortest_orbits(fig_pot, max_length=5)
    expansion = cycle_expansion(fig_pot, orbits, variable='r', max_power=3, s_max=6.0)
    for k in (1.3, 4.0 + 0.05j, 11.2):
        difference = abs(expansion.evaluate(k) - zeta(fig_pot, orbits, k))
        assert difference <= expansion.tail_bound(k) + 1e-12


def test_free_well_keeps_transmission_pure_terms(free_pot):
    orbits = shortest_orbits(free_pot, max_length=4)
    expansion = cycle_expansion(free_pot, orbits, variable='r', max_power=8)
    k = 2.3
    pure = expansion.group_values(k)[0]
    assert expansion.evaluate(k) == pytest.approx(pure)
    assert all('LL' not in word and 'RR' not in word
               for power, group in expansion.groups if power == 0
               for term in group for word in term.members)


def test_expansion_guards(fig_pot):
    orbits = shortest_orbits(fig_pot, max_length=4)
    with pytest.raises(ValidationError):
        cycle_expansion(fig_pot, orbits, variable='x')
    with pytest.raises(ValidationError):
        cycle_expansion(fig_pot, orbits, max_power=-1)
    with pytest.raises(ExpansionOverflowError):
        cycle_expansion(fig_pot, orbits, variable='r', max_power=10, max_terms=5)


def test_code_length_truncation_is_the_determinant(fig_pot):
    orbits = shortest_orbits(fig_pot, max_length=5)
    k = np.linspace(0.3, 40.0, 300) + 0.02j
    np.testing.assert_allclose(zeta_expanded(fig_pot, orbits, k, 5), det_one_minus_s(fig_pot, k), atol=1e-10)


def test_zeta_minima_sit_on_roots(fig_pot):
    orbits = shortest_orbits(fig_pot, max_length=8)
    roots = first_roots(fig_pot, 10)
    k = np.arange(1.0, roots[-1] + 1.5, 1e-3)
    magnitude = np.abs(zeta_expanded(fig_pot, orbits, k + 0.05j, 8))
    minima, _ = local_minima(k, magnitude)
    for root in roots:
        assert np.min(np.abs(minima - root)) < 0.05


def test_phase_winds_by_pi_across_each_root(fig_pot):
    orbits = shortest_orbits(fig_pot, max_length=8)
    for root in first_roots(fig_pot, 10):
        k = np.linspace(root - 0.2, root + 0.2, 401)
        phase = np.unwrap(np.angle(zeta_expanded(fig_pot, orbits, k + 0.01j, 8)))
        winding = phase[-1] - phase[0] - fig_pot.omega1 * 0.4
        assert winding == pytest.approx(-math.pi, abs=0.3)

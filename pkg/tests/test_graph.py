import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from errors import ValidationError
from graph.chain import build_model, build_smatrix, counting_function, det_one_minus_s, orbit_trace_sum, trace_power
from graph.checks import oracle_deviations, unitarity_defect
from model.chain import build_nstep
from model.step import build_potential
from spectrum.step import find_roots, first_roots, secular

FIG_POT = build_potential(0.7, 0.5)


def test_block_form_at_zero(fig_pot):
    smatrix = build_smatrix(fig_pot, 0.0)
    sigma = np.array([[fig_pot.r, fig_pot.t], [fig_pot.t, -fig_pot.r]])
    np.testing.assert_allclose(smatrix[:2, :2], 0.0)
    np.testing.assert_allclose(smatrix[:2, 2:], -np.eye(2))
    np.testing.assert_allclose(smatrix[2:, :2], sigma)
    np.testing.assert_allclose(smatrix[2:, 2:], 0.0)


def test_free_well_vertex_transmits(free_pot):
    smatrix = build_smatrix(free_pot, 0.0)
    np.testing.assert_allclose(smatrix[2:, :2], [[0.0, 1.0], [1.0, 0.0]])


def test_model_shape(fig_pot):
    model = build_model(fig_pot)
    assert model.dimension == 4
    assert model.connectivity.tolist() == [[0, 1, 0], [1, 0, 1], [0, 1, 0]]
    assert model.total_length == pytest.approx(fig_pot.omega1)
    assert len(build_model(build_nstep([0, 0.3, 0.6, 1], [0, 0.5, 0.75])).vertex_blocks) == 4
    assert model.basis == ('bond1->', 'bond2<-', 'bond1<-', 'bond2->')
    assert build_model(build_nstep([0, 0.7, 1], [0, 0.5])).basis == ('bond1->', 'bond2->', 'bond1<-', 'bond2<-')


@settings(deadline=None)
@given(k=st.floats(min_value=0.0, max_value=100.0))
def test_unitarity(k):
    assert unitarity_defect(FIG_POT, k) < 1e-12
    assert unitarity_defect(build_nstep([0, 0.3, 0.6, 1], [0, 0.5, 0.75]), k) < 1e-12


def test_det_vanishes_on_the_spectrum(fig_pot, free_pot):
    assert abs(det_one_minus_s(free_pot, math.pi)) < 1e-12
    roots = first_roots(fig_pot, 100)
    assert np.max(np.abs(det_one_minus_s(fig_pot, roots))) < 1e-8
    assert abs(det_one_minus_s(fig_pot, 1.0)) > 0.1


def test_det_is_proportional_to_secular(fig_pot):
    ks = np.linspace(0.1, 50.0, 500)
    expected = -2j * np.exp(1j * fig_pot.omega1 * ks) * secular(fig_pot, ks)
    np.testing.assert_allclose(det_one_minus_s(fig_pot, ks), expected, atol=1e-12)


def test_det_minima_sit_on_roots(fig_pot):
    roots = find_roots(fig_pot, 30.0).roots
    ks = np.linspace(0.05, 30.0, 30000)
    magnitude = np.abs(det_one_minus_s(fig_pot, ks))
    minima = ks[1:-1][(magnitude[1:-1] < magnitude[:-2]) & (magnitude[1:-1] < magnitude[2:])]
    assert len(minima) == len(roots)
    np.testing.assert_allclose(minima, roots, atol=2e-3)


def test_trace_power_examples(fig_pot, free_pot):
    k = 2.0
    expected = 2.0 * (-fig_pot.r * cmath.exp(2j * fig_pot.l1 * k) + fig_pot.r * cmath.exp(2j * fig_pot.l2 * k))
    assert abs(trace_power(fig_pot, k, 2) - expected) < 1e-12
    assert abs(trace_power(fig_pot, k, 3)) < 1e-12
    assert abs(trace_power(free_pot, 1.3, 4) - 4.0 * cmath.exp(2j * 1.3)) < 1e-12
    with pytest.raises(ValidationError):
        trace_power(fig_pot, k, 0)


def test_orbit_sum_first_word_length(fig_pot):
    k = 5.0
    expected = 2.0 * (-fig_pot.r * cmath.exp(2j * fig_pot.l1 * k) + fig_pot.r * cmath.exp(2j * fig_pot.l2 * k))
    assert abs(orbit_trace_sum(fig_pot, k, 1) - expected) < 1e-12
    assert abs(orbit_trace_sum(fig_pot, k, 2) - trace_power(fig_pot, k, 4)) < 1e-10


@pytest.mark.parametrize('n', [1, 3, 6])
def test_orbit_sum_free_well(free_pot, n):
    assert abs(orbit_trace_sum(free_pot, 2.2, n) - trace_power(free_pot, 2.2, 2 * n)) < 1e-12


def test_orbit_sum_guards(fig_pot):
    with pytest.raises(ValidationError):
        orbit_trace_sum(fig_pot, 1.0, 25)
    with pytest.raises(ValidationError):
        orbit_trace_sum(build_nstep([0, 0.7, 1], [0, 0.5]), 1.0, 2)


def test_oracle_report(fig_pot):
    report = oracle_deviations(fig_pot, samples=100, k_max=100.0, n_max=12, seed=0)
    assert report.unitarity < 1e-12
    assert report.odd_trace < 1e-12
    assert report.even_trace_vs_orbit_sum < 1e-10
    assert report.det_at_roots < 1e-8
    assert report.zeta_vs_det < 1e-10
    assert report.as_dict()['roots_checked'] == 100


def test_oracle_report_rejects_no_samples(fig_pot):
    with pytest.raises(ValidationError):
        oracle_deviations(fig_pot, samples=0)


def test_counting_function_near_zero(fig_pot, free_pot):
    assert counting_function(free_pot, math.pi / 2.0, 200) == pytest.approx(0.0, abs=0.05)
    assert counting_function(fig_pot, 1e-9, 20) == pytest.approx(-0.5, abs=1e-6)


def test_counting_function_steps_by_one(fig_pot):
    roots = find_roots(fig_pot, 12.0).roots
    first = counting_function(fig_pot, 0.5 * (roots[0] + roots[1]), 200)
    second = counting_function(fig_pot, 0.5 * (roots[1] + roots[2]), 200)
    assert first == pytest.approx(1.0, abs=0.2)
    assert second - first == pytest.approx(1.0, abs=0.2)

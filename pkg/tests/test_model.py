import math

import pytest
from hypothesis import given, strategies as st

from errors import ValidationError
from model import PotentialInterface, interface_coefficients
from model.chain import build_nstep
from model.step import build_potential, poisson_step_position


def test_fig_parameters(fig_pot):
    assert fig_pot.beta == pytest.approx(0.70710678, abs=1e-8)
    assert fig_pot.l1 == 0.7
    assert fig_pot.l2 == pytest.approx(0.21213203, abs=1e-8)
    assert fig_pot.omega1 == pytest.approx(0.91213203, abs=1e-8)
    assert fig_pot.omega2 == pytest.approx(0.48786797, abs=1e-8)
    assert fig_pot.r == pytest.approx(0.17157288, abs=1e-8)
    assert fig_pot.t == pytest.approx(0.98517143, abs=1e-8)


def test_free_well(free_pot):
    assert free_pot.beta == 1.0
    assert free_pot.r == 0.0
    assert free_pot.omega1 == 1.0
    assert free_pot.omega2 == 0.0


def test_poisson_geometry_has_equal_lengths():
    pot = build_potential(poisson_step_position(0.5), 0.5)
    assert pot.b == pytest.approx(0.414213562, abs=1e-9)
    assert abs(pot.l1 - pot.l2) < 1e-9


@pytest.mark.parametrize('b, lam, parameter', [
    (0.0, 0.5, 'b'),
    (1.0, 0.5, 'b'),
    (0.7, 1.0, 'lambda'),
    (0.7, -0.1, 'lambda'),
    (float('nan'), 0.5, 'b'),
])
def test_out_of_range_parameters(b, lam, parameter):
    with pytest.raises(ValidationError) as error:
        build_potential(b, lam)
    assert error.value.parameter == parameter


@given(b=st.floats(min_value=0.01, max_value=0.99), lam=st.floats(min_value=0.0, max_value=0.99))
def test_derived_invariants(b, lam):
    pot = build_potential(b, lam)
    assert abs(pot.r ** 2 + pot.t ** 2 - 1.0) < 1e-14
    assert 0.0 <= pot.r < 1.0
    assert pot.l1 > 0.0 and pot.l2 > 0.0
    assert abs(pot.omega2) < pot.omega1
    assert pot.omega1 == pot.l1 + pot.l2
    assert pot.omega2 == pot.l1 - pot.l2


def test_interface_coefficients():
    r, t = interface_coefficients(1.0, math.sqrt(0.5))
    assert r == pytest.approx(0.17157288, abs=1e-8)
    assert interface_coefficients(0.6, 0.6) == (0.0, 1.0)
    flipped, t_flipped = interface_coefficients(math.sqrt(0.5), 1.0)
    assert flipped == pytest.approx(-r, abs=1e-15)
    assert t_flipped == pytest.approx(t, abs=1e-15)


@pytest.mark.parametrize('beta_left, beta_right', [(0.0, 1.0), (1.0, -0.5)])
def test_interface_coefficients_reject_non_positive(beta_left, beta_right):
    with pytest.raises(ValidationError):
        interface_coefficients(beta_left, beta_right)


def test_nstep_single_free_region():
    pot = build_nstep([0, 1], [0])
    assert pot.lengths == (1.0,)
    assert pot.vertex_coefficients() == ()


def test_nstep_matches_step(fig_pot):
    pot = build_nstep([0, 0.7, 1], [0, 0.5])
    assert pot.lengths[0] == pytest.approx(fig_pot.l1, abs=1e-14)
    assert pot.lengths[1] == pytest.approx(fig_pot.l2, abs=1e-14)
    (r, t), = pot.vertex_coefficients()
    assert r == pytest.approx(fig_pot.r, abs=1e-14)
    assert t == pytest.approx(fig_pot.t, abs=1e-14)
    assert pot.weyl_slope() == pytest.approx(fig_pot.weyl_slope(), abs=1e-14)


def test_nstep_three_regions():
    pot = build_nstep([0, 0.3, 0.6, 1], [0, 0.5, 0.75])
    assert pot.betas == pytest.approx((1.0, 0.70710678, 0.5), abs=1e-8)
    assert pot.lengths == pytest.approx((0.3, 0.21213203, 0.2), abs=1e-8)


@pytest.mark.parametrize('breakpoints, lambdas', [
    ([0, 0.6, 0.3, 1], [0, 0.5, 0.2]),
    ([0, 0.5, 1], [0, 1.2]),
    ([0, 0.5, 1], [0]),
    ([0.1, 1], [0]),
    ([0], []),
])
def test_nstep_rejects_bad_input(breakpoints, lambdas):
    with pytest.raises(ValidationError):
        build_nstep(breakpoints, lambdas)


def test_potentials_satisfy_interface(fig_pot):
    assert isinstance(fig_pot, PotentialInterface)
    assert isinstance(build_nstep([0, 1], [0]), PotentialInterface)

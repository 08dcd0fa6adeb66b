import pytest

from model.step import build_potential, poisson_step_position


@pytest.fixture
def fig_pot():
    """b = 0.7, lambda = 0.5: the configuration of the Fourier and density studies."""
    return build_potential(0.7, 0.5)


@pytest.fixture
def free_pot():
    return build_potential(0.5, 0.0)


@pytest.fixture
def poisson_pot():
    return build_potential(poisson_step_position(0.5), 0.5)

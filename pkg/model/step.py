import logging
import math
from dataclasses import dataclass

from errors import ValidationError
from model import PotentialInterface, beta_of, interface_coefficients, validate_lambda

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class ScaledStepPotential(PotentialInterface):
    """
        Infinite well of unit width with a scaled step V = lambda*E on (b, 1).
        Units: hbar = 1, mass 1/2, E = k^2.
    """
    b: float
    lam: float
    beta: float
    l1: float
    l2: float
    omega1: float
    omega2: float
    r: float
    t: float

    def bond_lengths(self):
        return self.l1, self.l2

    def vertex_coefficients(self):
        return (self.r, self.t),

    def weyl_slope(self):
        return self.omega1 / math.pi

    def as_dict(self):
        return {'b': self.b, 'lambda': self.lam, 'beta': self.beta, 'l1': self.l1, 'l2': self.l2,
                'omega1': self.omega1, 'omega2': self.omega2, 'r': self.r, 't': self.t}


def build_potential(b: float, lam: float) -> ScaledStepPotential:
    """
        Builds the step potential and precomputes every derived spectral parameter.

    :param b: step position in (0, 1)
    :param lam: scaling constant in [0, 1)
    :return:
    """
    b = float(b)
    if not math.isfinite(b) or not 0.0 < b < 1.0:
        raise ValidationError('b', f'step position must lie in (0, 1), got {b}')
    lam = validate_lambda(lam)

    beta = beta_of(lam)
    l1 = b
    l2 = beta * (1.0 - b)
    r, t = interface_coefficients(1.0, beta)

    potential = ScaledStepPotential(
        b=b, lam=lam, beta=beta, l1=l1, l2=l2,
        omega1=l1 + l2, omega2=l1 - l2, r=r, t=t)
    log.debug(" build_potential -- b=%s lambda=%s gives r=%s omega1=%s", b, lam, r, potential.omega1)
    return potential


def poisson_step_position(lam: float) -> float:
    """Step position b = beta/(1+beta) at which both weighted lengths equal b."""
    beta = beta_of(validate_lambda(lam))
    return beta / (1.0 + beta)

import logging
import math
from dataclasses import dataclass

from errors import ValidationError
from model import PotentialInterface, beta_of, interface_coefficients, validate_lambda

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class NStepPotential(PotentialInterface):
    breakpoints: tuple
    lambdas: tuple
    betas: tuple
    lengths: tuple

    @property
    def regions(self):
        return len(self.lambdas)

    def bond_lengths(self):
        return self.lengths

    def vertex_coefficients(self):
        return tuple(interface_coefficients(left, right) for left, right in zip(self.betas, self.betas[1:]))

    def weyl_slope(self):
        return math.fsum(self.lengths) / math.pi

    def as_dict(self):
        return {'breakpoints': list(self.breakpoints), 'lambdas': list(self.lambdas),
                'betas': list(self.betas), 'lengths': list(self.lengths)}


def build_nstep(breakpoints, lambdas) -> NStepPotential:
    """
        Builds the N-step scaled potential V = lambda_i*E on (b_{i-1}, b_i).

    :param breakpoints: 0 = b_0 < b_1 < ... < b_N = 1
    :param lambdas: lambda_1 ... lambda_N, each in [0, 1)
    :return:
    """
    breakpoints = tuple(float(value) for value in breakpoints)
    lambdas = tuple(validate_lambda(value, parameter=f'lambdas[{index}]') for index, value in enumerate(lambdas))

    if not lambdas:
        raise ValidationError('lambdas', 'at least one region is required')
    if len(breakpoints) != len(lambdas) + 1:
        raise ValidationError('breakpoints', f'expected {len(lambdas) + 1} breakpoints for {len(lambdas)} regions, '
                                             f'got {len(breakpoints)}')
    if breakpoints[0] != 0.0 or breakpoints[-1] != 1.0:
        raise ValidationError('breakpoints', 'must start at 0 and end at 1')
    for index, (left, right) in enumerate(zip(breakpoints, breakpoints[1:])):
        if not right > left:
            raise ValidationError('breakpoints', f'not strictly increasing at position {index + 1}')

    betas = tuple(beta_of(lam) for lam in lambdas)
    lengths = tuple(beta * (right - left) for beta, left, right in zip(betas, breakpoints, breakpoints[1:]))

    log.debug(" build_nstep -- %s regions with weighted lengths %s", len(lambdas), lengths)
    return NStepPotential(breakpoints=breakpoints, lambdas=lambdas, betas=betas, lengths=lengths)

import logging
import math
from dataclasses import dataclass

import numpy as np

from errors import ExpansionOverflowError, ValidationError
from model.step import ScaledStepPotential
from orbits.record import amplitude

log = logging.getLogger(__name__)

MAX_TERMS = 200_000
VARIABLES = ('r', 't')


def zeta(pot: ScaledStepPotential, orbits, k):
    """
        Z = prod_p (1 - A_p exp(i S0_p k)) over a finite orbit set; k may be complex.
    """
    k = np.asarray(k)
    product = np.ones(k.shape, dtype=complex)
    for rec in orbits:
        product = product * (1.0 - amplitude(rec, pot) * np.exp(1j * rec.S0 * k))
    return product


@dataclass(frozen=True)
class PseudoOrbit:
    """Product of distinct primitive orbits, one term of the expanded product."""
    members: tuple
    sign: int
    r_power: int
    t_power: int
    action: float
    code_length: int

    def value(self, k, r: float, t: float):
        return self.sign * r ** self.r_power * t ** self.t_power * np.exp(1j * self.action * np.asarray(k))


@dataclass(frozen=True)
class CycleExpansion:
    variable: str
    max_power: int
    s_max: float
    max_length: int
    r: float
    t: float
    groups: tuple
    orbit_factors: tuple

    @property
    def terms(self):
        return [term for _, group in self.groups for term in group]

    def group_values(self, k):
        return {power: sum(term.value(k, self.r, self.t) for term in group) for power, group in self.groups}

    def evaluate(self, k):
        k = np.asarray(k)
        total = np.zeros(k.shape, dtype=complex)
        for term in self.terms:
            total = total + term.value(k, self.r, self.t)
        return total

    def tail_bound(self, k: complex) -> float:
        """
            Upper bound on the modulus of everything discarded: the full expansion
            has absolute sum prod_p (1 + |A_p e^{i S0_p k}|).
        """
        decay = lambda action: math.exp(-action * complex(k).imag)
        full = math.prod(1.0 + modulus * decay(action) for modulus, action in self.orbit_factors)
        kept = sum(abs(self.r ** term.r_power * self.t ** term.t_power) * decay(term.action) for term in self.terms)
        return max(0.0, full - kept)


def cycle_expansion(pot: ScaledStepPotential, orbits, variable: str = 'r', max_power: int = 4,
                    s_max: float = math.inf, max_length: int = None, max_terms: int = MAX_TERMS) -> CycleExpansion:
    """
        Expands the zeta product into pseudo-orbit terms and groups them by the
        power of the expansion variable (r or t). Terms with power above
        max_power, reduced action above s_max or total code length above
        max_length are discarded.

    :param pot:
    :param orbits: primitive OrbitRecords
    :param variable: 'r' or 't'
    :param max_power:
    :param s_max:
    :param max_length: curvature truncation by total code length, None for no limit
    :param max_terms: guard against combinatorial blow-up
    :return:
    """
    if variable not in VARIABLES:
        raise ValidationError('variable', f'expansion variable must be one of {VARIABLES}, got {variable!r}')
    if max_power < 0:
        raise ValidationError('max_power', f'must be non-negative, got {max_power}')
    length_limit = math.inf if max_length is None else max_length

    ordered = sorted(orbits, key=lambda rec: (rec.S0, rec.word))
    factors = [(rec.word, -rec.chi_parity, rec.sigma, rec.tau2, rec.S0, rec.length) for rec in ordered]
    terms = []

    def extend(start, members, sign, r_power, t_power, action, code_length):
        terms.append(PseudoOrbit(members=members, sign=sign, r_power=r_power, t_power=t_power,
                                 action=action, code_length=code_length))
        if len(terms) > max_terms:
            raise ExpansionOverflowError(f'cycle expansion exceeds {max_terms} terms', max_terms=max_terms)
        for index in range(start, len(factors)):
            word, factor_sign, sigma, tau2, s0, length = factors[index]
            if action + s0 > s_max:
                break
            power = (r_power + sigma) if variable == 'r' else (t_power + tau2)
            if power > max_power or code_length + length > length_limit:
                continue
            extend(index + 1, members + (word,), sign * factor_sign, r_power + sigma, t_power + tau2,
                   action + s0, code_length + length)

    extend(0, (), 1, 0, 0, 0.0, 0)

    grouped = {}
    for term in terms:
        power = term.r_power if variable == 'r' else term.t_power
        grouped.setdefault(power, []).append(term)
    groups = tuple((power, tuple(grouped[power])) for power in sorted(grouped))

    log.debug(" cycle_expansion -- %s pseudo-orbits from %s orbits in %s groups", len(terms), len(ordered), len(groups))
    return CycleExpansion(
        variable=variable, max_power=max_power, s_max=s_max, max_length=max_length,
        r=pot.r, t=pot.t, groups=groups,
        orbit_factors=tuple((abs(amplitude(rec, pot)), rec.S0) for rec in ordered))


def zeta_expanded(pot: ScaledStepPotential, orbits, k, max_length: int):
    """
        Zeta function from the cycle expansion truncated at total code length.
        With every primitive orbit up to that length supplied this equals det(1 - S).
    """
    max_power = max_length
    expansion = cycle_expansion(pot, orbits, variable='r', max_power=max_power, max_length=max_length)
    return expansion.evaluate(k)

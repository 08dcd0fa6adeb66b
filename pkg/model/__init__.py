import abc
import math

from errors import ValidationError


class PotentialInterface(metaclass=abc.ABCMeta):
    """
        A piecewise-constant scaled potential seen as a chain graph:
        one bond per region, dead ends at x=0 and x=1.
    """

    @classmethod
    def __subclasshook__(cls, subclass):
        return (hasattr(subclass, 'bond_lengths') and
                callable(subclass.bond_lengths) and
                hasattr(subclass, 'vertex_coefficients') and
                callable(subclass.vertex_coefficients) and
                hasattr(subclass, 'weyl_slope') and
                callable(subclass.weyl_slope) or
                NotImplemented)

    @abc.abstractmethod
    def bond_lengths(self) -> tuple:
        """Weighted bond lengths l_i = beta_i * (b_i - b_{i-1}), left to right"""
        raise NotImplementedError

    @abc.abstractmethod
    def vertex_coefficients(self) -> tuple:
        """(r, t) for every interior vertex, left to right"""
        raise NotImplementedError

    @abc.abstractmethod
    def weyl_slope(self) -> float:
        """Mean number of roots per unit wavenumber"""
        raise NotImplementedError


def validate_lambda(lam: float, parameter: str = 'lambda') -> float:
    lam = float(lam)
    if not math.isfinite(lam) or lam < 0.0 or lam >= 1.0:
        raise ValidationError(parameter, f'scaling constant must lie in [0, 1), got {lam}')
    return lam


def beta_of(lam: float) -> float:
    return math.sqrt(1.0 - lam)


def interface_coefficients(beta_left: float, beta_right: float):
    """
        Reflection and transmission at the interface between two regions,
        seen from the left. Swapping the sides flips the sign of r.

    :param beta_left:
    :param beta_right:
    :return: (r, t)
    """
    for name, value in (('beta_left', beta_left), ('beta_right', beta_right)):
        if not math.isfinite(value) or value <= 0.0:
            raise ValidationError(name, f'must be positive, got {value}')

    total = beta_left + beta_right
    r = (beta_left - beta_right) / total
    t = 2.0 * math.sqrt(beta_left * beta_right) / total
    return r, t

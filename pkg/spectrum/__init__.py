import abc
from dataclasses import dataclass

import numpy as np

WEYL_TOLERANCE = 1.5
OVERSAMPLING = 20
DEGENERACY_THRESHOLD = 1e-8


class SecularInterface(metaclass=abc.ABCMeta):
    """A real function of k whose positive zeros are the spectrum."""

    @classmethod
    def __subclasshook__(cls, subclass):
        return (hasattr(subclass, 'evaluate') and
                callable(subclass.evaluate) and
                hasattr(subclass, 'derivative') and
                callable(subclass.derivative) and
                hasattr(subclass, 'weyl_slope') and
                callable(subclass.weyl_slope) and
                hasattr(subclass, 'residual_tolerance') and
                callable(subclass.residual_tolerance) or
                NotImplemented)

    @abc.abstractmethod
    def evaluate(self, k):
        """Vectorised secular function"""
        raise NotImplementedError

    @abc.abstractmethod
    def derivative(self, k):
        """Vectorised d/dk of the secular function"""
        raise NotImplementedError

    @abc.abstractmethod
    def weyl_slope(self) -> float:
        """Mean number of roots per unit k"""
        raise NotImplementedError

    @abc.abstractmethod
    def residual_tolerance(self) -> float:
        """Largest |secular(k_n)| accepted for a reported root"""
        raise NotImplementedError


@dataclass(frozen=True)
class CompletenessReport:
    max_deviation: float
    tolerance: float
    weyl_slope: float
    scan_step: float
    refinements: int
    near_degenerate: tuple
    max_residual: float
    expected_count: int = None

    def as_dict(self):
        return {
            'max_deviation': self.max_deviation,
            'tolerance': self.tolerance,
            'weyl_slope': self.weyl_slope,
            'scan_step': self.scan_step,
            'refinements': self.refinements,
            'near_degenerate': list(self.near_degenerate),
            'max_residual': self.max_residual,
            'expected_count': self.expected_count,
        }


@dataclass(frozen=True, eq=False)
class SpectrumResult:
    """Sorted positive roots k_n of a secular function up to k_max; E_n = k_n^2."""
    roots: np.ndarray
    residuals: np.ndarray
    k_max: float
    completeness_report: CompletenessReport

    def __len__(self):
        return len(self.roots)

    @property
    def energies(self):
        return self.roots ** 2

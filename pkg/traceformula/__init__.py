from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Truncation:
    """Which part of the orbit sum a profile includes."""
    max_length: int = None
    count: int = None
    nu_max: int = None
    resummed: bool = False

    def as_dict(self):
        return {'max_length': self.max_length, 'count': self.count, 'nu_max': self.nu_max,
                'resummed': self.resummed}


@dataclass(frozen=True, eq=False)
class DensityProfile:
    """
        Trace-formula density sampled on a k grid. Values are rho(E) with E = k^2
        unless `k_domain` is set, in which case they are multiplied by dE/dk = 2k.
    """
    k_grid: np.ndarray
    values: np.ndarray
    truncation: Truncation
    smoothing: float = 0.0
    k_domain: bool = False

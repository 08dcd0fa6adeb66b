from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True, eq=False)
class FourierProfile:
    """|F(s)| = |sum_j exp(-i s k_j)| sampled on an increasing s grid."""
    s_grid: np.ndarray
    magnitude: np.ndarray
    j_roots: int
    k_max: float

    @property
    def resolution(self):
        return 2.0 * np.pi / self.k_max


@dataclass(frozen=True)
class PeakMatch:
    s: float
    action: float = None
    label: str = None

    @property
    def matched(self):
        return self.action is not None

    @property
    def residual(self):
        return abs(self.s - self.action) if self.matched else None


@dataclass(frozen=True)
class PeakMatchReport:
    tolerance: float
    matches: list = field(default_factory=list)

    @property
    def matched(self):
        return [match for match in self.matches if match.matched]

    @property
    def unmatched(self):
        return [match for match in self.matches if not match.matched]

    @property
    def matched_fraction(self):
        if not self.matches:
            return 1.0
        return len(self.matched) / len(self.matches)

    @property
    def worst_residual(self):
        return max((match.residual for match in self.matched), default=0.0)

    def as_dict(self):
        return {
            'tolerance': self.tolerance,
            'peaks': len(self.matches),
            'matched_fraction': self.matched_fraction,
            'worst_residual': self.worst_residual,
            'matched': [{'s': m.s, 'action': m.action, 'label': m.label} for m in self.matched],
            'unmatched': [m.s for m in self.unmatched],
        }

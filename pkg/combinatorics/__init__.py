from dataclasses import dataclass, field
from fractions import Fraction

SUBSTITUTION_RULE = 'LL->r, RR->-r, LR->t, RL->t'


@dataclass(frozen=True)
class WordClass:
    """
        Cyclic class of an even-length binary word. The word contributes
        (-1)^alpha (r^2)^beta (t^2)^gamma with primitive time T = M / nu.
    """
    word: str
    nu: int
    T: Fraction
    alpha: int
    beta: int
    gamma: int


@dataclass(frozen=True)
class WordClassTable:
    M: int
    classes: tuple
    provenance: str = SUBSTITUTION_RULE

    def __len__(self):
        return len(self.classes)


@dataclass(frozen=True)
class SumRuleReport:
    M: int
    class_count: int
    sums: tuple
    binomials: tuple
    coefficients: tuple
    polynomial: str
    holds: bool
    details: dict = field(default_factory=dict)

    @property
    def binomial_holds(self):
        return tuple(self.sums) == tuple(self.binomials)

    @property
    def verdict(self):
        return 'PASS' if self.holds and self.binomial_holds else 'FAIL'

    def as_dict(self):
        return {
            'M': self.M,
            'class_count': self.class_count,
            'sums': [str(value) for value in self.sums],
            'binomials': list(self.binomials),
            'coefficients': [str(value) for value in self.coefficients],
            'polynomial': self.polynomial,
            'sum_rule_holds': self.holds,
            'binomial_holds': self.binomial_holds,
            'verdict': self.verdict,
        }

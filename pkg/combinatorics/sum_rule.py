import logging
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from sympy import Poly, QQ, Rational, symbols

from combinatorics import SumRuleReport, WordClass, WordClassTable
from errors import ValidationError
from model.step import build_potential, poisson_step_position
from orbits.necklace import MAX_CODE_LENGTH, enumerate_primitive, necklace_count, necklace_words
from orbits.record import orbit_records, pair_counts
from spectrum.step import first_roots

log = logging.getLogger(__name__)

MAX_HALF_LENGTH = 13
ROOT_TOLERANCE = 1e-10
ACTION_TOLERANCE = 1e-12

x = symbols('x')


def _check_half_length(M, allow_large=False):
    limit = MAX_CODE_LENGTH // 2 if allow_large else MAX_HALF_LENGTH
    if not isinstance(M, int) or not 1 <= M <= limit:
        raise ValidationError('m', f'half-length must be an integer in [1, {limit}], got {M!r}')
    if M > MAX_HALF_LENGTH:
        log.warning(" word table -- M=%s enumerates %s classes; expect large memory use", M, necklace_count(2 * M))


def _weights(word):
    counts = pair_counts(word)
    return counts.rr_pairs % 2, counts.sigma // 2, counts.transitions // 2


def build_word_table(M: int, allow_large: bool = False) -> WordClassTable:
    """
        One class per necklace of length 2M with its exact primitive time and
        the (alpha, beta, gamma) weights from a cyclic pair scan.
    """
    _check_half_length(M, allow_large)
    classes = []
    for word, nu in necklace_words(2 * M):
        alpha, beta, gamma = _weights(word)
        classes.append(WordClass(word=word, nu=nu, T=Fraction(M, nu), alpha=alpha, beta=beta, gamma=gamma))
    return WordClassTable(M=M, classes=tuple(classes))


def _signed_times(M: int):
    """(beta, alpha, nu) -> number of classes; avoids holding the table for large M."""
    census = Counter()
    for word, nu in necklace_words(2 * M):
        alpha, beta, _ = _weights(word)
        census[(beta, alpha, nu)] += 1
    return census


def binomial_sums(M: int, allow_large: bool = False):
    """
        For each beta in 0..M the exact sum over classes of (-1)^alpha T.
        Each equals C(M, beta).
    """
    _check_half_length(M, allow_large)
    sums = [Fraction(0)] * (M + 1)
    for (beta, alpha, nu), count in sorted(_signed_times(M).items()):
        sums[beta] += (-1) ** alpha * count * Fraction(M, nu)
    return sums


def _expand(sums, M):
    """Coefficients of sum_beta c_beta x^beta (1-x)^(M-beta), lowest order first."""
    coefficients = [Fraction(0)] * (M + 1)
    for beta, c in enumerate(sums):
        gamma = M - beta
        for j in range(gamma + 1):
            coefficients[beta + j] += c * math.comb(gamma, j) * (-1) ** j
    return coefficients


def verify_sum_rule(M: int, allow_large: bool = False) -> SumRuleReport:
    """
        Forms P(x) = sum_w T_w (-1)^alpha x^beta (1-x)^gamma with x = r^2 in exact
        rational arithmetic and checks P(x) == 1. A failure is a finding, not an error.
    """
    sums = binomial_sums(M, allow_large)
    coefficients = _expand(sums, M)
    polynomial = Poly([Rational(c.numerator, c.denominator) for c in reversed(coefficients)], x, domain=QQ)
    holds = polynomial == Poly(1, x, domain=QQ)
    binomials = tuple(math.comb(M, beta) for beta in range(M + 1))
    report = SumRuleReport(M=M, class_count=necklace_count(2 * M), sums=tuple(sums), binomials=binomials,
                           coefficients=tuple(coefficients), polynomial=str(polynomial.as_expr()), holds=holds)
    if report.verdict != 'PASS':
        log.error(" verify_sum_rule -- identity fails at M=%s: %s", M, report.polynomial)
    return report


@dataclass(frozen=True)
class PoissonCheck:
    lam: float
    b: float
    first_root: float
    root_deviation: float
    action_deviation: float
    roots_checked: int
    orbits_checked: int

    @property
    def holds(self):
        return self.root_deviation <= ROOT_TOLERANCE and self.action_deviation <= ACTION_TOLERANCE

    def as_dict(self):
        return {'lambda': self.lam, 'b': self.b, 'first_root': self.first_root,
                'root_deviation': self.root_deviation, 'action_deviation': self.action_deviation,
                'roots_checked': self.roots_checked, 'orbits_checked': self.orbits_checked,
                'holds': self.holds}


def poisson_special_case_check(lam: float, n_roots: int = 50, max_length: int = 8) -> PoissonCheck:
    """
        At b = beta/(1+beta) both regions have the same scaled length b, the
        levels are n pi/(2b) and every orbit action is a multiple of 2b.
    """
    b = poisson_step_position(lam)
    pot = build_potential(b, lam)
    roots = first_roots(pot, n_roots)
    expected = np.arange(1, len(roots) + 1) * math.pi / (2.0 * b)
    root_deviation = float(np.max(np.abs(roots - expected)))

    orbits = orbit_records(enumerate_primitive(max_length), pot)
    ratios = np.array([rec.S0 / (2.0 * b) for rec in orbits])
    action_deviation = float(np.max(np.abs(ratios - np.rint(ratios))))

    return PoissonCheck(lam=lam, b=b, first_root=float(roots[0]), root_deviation=root_deviation,
                        action_deviation=action_deviation, roots_checked=len(roots), orbits_checked=len(orbits))

import functools
import logging
import math
from collections import Counter
from dataclasses import dataclass

from errors import ValidationError
from model.step import ScaledStepPotential
from orbits import OrbitCode, OrbitRecord
from orbits.necklace import enumerate_primitive, necklace_words, primitive_count

log = logging.getLogger(__name__)

ACTION_MERGE_TOLERANCE = 1e-9


@dataclass(frozen=True)
class PairCounts:
    n_L: int
    n_R: int
    ll_pairs: int
    rr_pairs: int
    transitions: int

    @property
    def sigma(self):
        return self.ll_pairs + self.rr_pairs

    @property
    def sign(self):
        return -1 if (self.n_L + self.n_R + self.rr_pairs) % 2 else 1


def pair_counts(word: str) -> PairCounts:
    """One cyclic scan over adjacent symbol pairs; a single symbol pairs with itself."""
    ll_pairs = rr_pairs = transitions = 0
    for current, following in zip(word, word[1:] + word[:1]):
        if current != following:
            transitions += 1
        elif current == 'L':
            ll_pairs += 1
        else:
            rr_pairs += 1
    n_L = word.count('L')
    return PairCounts(n_L=n_L, n_R=len(word) - n_L, ll_pairs=ll_pairs, rr_pairs=rr_pairs, transitions=transitions)


def orbit_record(code: OrbitCode, pot: ScaledStepPotential) -> OrbitRecord:
    """
        Counts, Maslov sign and reduced action of an orbit.
        Every symbol is one Dirichlet wall bounce, so the sign is (-1)^(length + #RR).
    """
    counts = pair_counts(code.word)
    return OrbitRecord(
        code=code,
        n_L=counts.n_L,
        n_R=counts.n_R,
        sigma=counts.sigma,
        tau2=counts.transitions,
        rr_pairs=counts.rr_pairs,
        chi_parity=counts.sign,
        S0=2.0 * (counts.n_L * pot.l1 + counts.n_R * pot.l2))


def orbit_records(codes, pot: ScaledStepPotential):
    return [orbit_record(code, pot) for code in codes]


def amplitude(rec: OrbitRecord, pot: ScaledStepPotential) -> float:
    return rec.chi_parity * pot.r ** rec.sigma * pot.t ** rec.tau2


def pair_product_amplitude(code: OrbitCode, pot: ScaledStepPotential) -> float:
    """
        Same amplitude from the substitution LL -> r, RR -> -r, LR/RL -> t
        and one factor -1 per wall bounce.
    """
    substitution = {('L', 'L'): pot.r, ('R', 'R'): -pot.r, ('L', 'R'): pot.t, ('R', 'L'): pot.t}
    word = code.word
    product = (-1.0) ** len(word)
    for pair in zip(word, word[1:] + word[:1]):
        product *= substitution[pair]
    return product


def orbit_label(code: OrbitCode, nu: int = 1) -> str:
    return code.word if nu == 1 else f'({code.word})^{nu}'


@dataclass(frozen=True)
class ActionLine:
    s: float
    labels: tuple


def _merge_actions(entries):
    entries.sort(key=lambda entry: (entry[0], entry[1]))
    lines = []
    for s, label in entries:
        if lines and s - lines[-1][0] <= ACTION_MERGE_TOLERANCE:
            lines[-1][1].append(label)
        else:
            lines.append((s, [label]))
    return [ActionLine(s=s, labels=tuple(labels)) for s, labels in lines]


def action_spectrum(orbits, nu_max: int, s_max: float):
    """
        Positions nu*S0_p <= s_max of the delta peaks the Fourier image should show,
        coincident values merged into one line carrying every label.

    :param orbits: primitive OrbitRecords
    :param nu_max:
    :param s_max:
    :return: list of ActionLine sorted by s
    """
    if nu_max < 1:
        raise ValidationError('nu_max', f'must be at least 1, got {nu_max}')
    entries = []
    for rec in orbits:
        if not rec.code.is_primitive:
            raise ValidationError('orbits', f'{rec.word} is not primitive')
        for nu in range(1, nu_max + 1):
            s = nu * rec.S0
            if s > s_max:
                break
            entries.append((s, orbit_label(rec.code, nu)))
    return _merge_actions(entries)


def action_lattice(pot: ScaledStepPotential, s_max: float):
    """
        All actions 2(n_L l1 + n_R l2) <= s_max. Each (n_L, n_R) is realised by
        the necklace L^n_L R^n_R, so this is the full set of nu*S0_p without
        enumerating long codes.
    """
    entries = []
    for n_L in range(int(s_max / (2.0 * pot.l1)) + 1):
        remaining = s_max - 2.0 * n_L * pot.l1
        for n_R in range(int(remaining / (2.0 * pot.l2)) + 1):
            if n_L == n_R == 0:
                continue
            code = OrbitCode.from_word('L' * n_L + 'R' * n_R)
            primitive = OrbitCode(word=code.root)
            entries.append((2.0 * (n_L * pot.l1 + n_R * pot.l2), orbit_label(primitive, code.nu)))
    return _merge_actions(entries)


def size_key(rec: OrbitRecord):
    return rec.length, rec.S0, rec.word


def shortest_orbits(pot: ScaledStepPotential, max_length: int = None, count: int = None):
    """
        Primitive orbits ordered by code length, then action, then code,
        truncated by maximum code length and/or explicit count.
    """
    if max_length is None and count is None:
        raise ValidationError('max_length', 'give a maximum code length or an orbit count')
    if count is not None and count < 0:
        raise ValidationError('count', f'must be non-negative, got {count}')

    length = max_length
    if length is None:
        length = 1
        while sum(primitive_count_upto(length)) < count:
            length += 1

    records = sorted(orbit_records(enumerate_primitive(length), pot), key=size_key)
    if count is not None:
        records = records[:count]
    log.debug(" shortest_orbits -- %s primitive orbits up to code length %s", len(records), length)
    return records


def primitive_count_upto(max_length: int):
    return [primitive_count(length) for length in range(1, max_length + 1)]


@dataclass(frozen=True)
class CensusEntry:
    n_L: int
    n_R: int
    sigma: int
    tau2: int
    sign: int
    multiplicity: int


@functools.lru_cache(maxsize=32)
def word_census(length: int):
    """
        Number of binary words of a length per (n_L, sigma, tau2, sign) class.
        Built from necklaces weighted by their rotation-class size.
    """
    census = Counter()
    for word, nu in necklace_words(length):
        counts = pair_counts(word)
        key = (counts.n_L, counts.n_R, counts.sigma, counts.transitions, counts.sign)
        census[key] += length // nu
    return tuple(CensusEntry(*key, multiplicity=multiplicity) for key, multiplicity in sorted(census.items()))


def newtonian_action(pot: ScaledStepPotential) -> float:
    return 2.0 * pot.omega1


def is_newtonian_multiple(s: float, pot: ScaledStepPotential, tolerance: float) -> bool:
    period = newtonian_action(pot)
    multiple = round(s / period)
    return multiple >= 1 and math.fabs(s - multiple * period) <= tolerance

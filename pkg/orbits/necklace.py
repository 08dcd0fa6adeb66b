import logging

from sympy import divisors, mobius, totient

from errors import ValidationError
from orbits import ALPHABET, OrbitCode

log = logging.getLogger(__name__)

MAX_CODE_LENGTH = 32

_SYMBOLS = str.maketrans('01', ALPHABET)


def _check_length(length: int, parameter: str):
    if not isinstance(length, int) or not 1 <= length <= MAX_CODE_LENGTH:
        raise ValidationError(parameter, f'code length must be an integer in [1, {MAX_CODE_LENGTH}], got {length!r}')


def lyndon_words(max_length: int):
    """
        Binary Lyndon words of length <= max_length in lexicographic order
        (Duval's generation). Yields lists of 0/1 that are reused between steps.
    """
    word = [-1]
    while word:
        word[-1] += 1
        yield word
        period = len(word)
        while len(word) < max_length:
            word.append(word[-period])
        while word and word[-1] == 1:
            word.pop()


def _as_text(symbols):
    return ''.join(map(str, symbols)).translate(_SYMBOLS)


def necklace_words(length: int):
    """
        Every binary necklace of the given length, lexicographic order, as
        (word, nu) pairs. Lyndon words whose length divides `length` expand to
        the necklaces in order.
    """
    for word in lyndon_words(length):
        period = len(word)
        if length % period == 0:
            yield _as_text(word) * (length // period), length // period


def enumerate_necklaces(length: int):
    """
        One canonical representative per cyclic class of binary words.

    :param length:
    :return: list of OrbitCode in lexicographic order
    """
    _check_length(length, 'length')
    codes = [OrbitCode(word=word, nu=nu) for word, nu in necklace_words(length)]
    log.debug(" enumerate_necklaces -- %s classes of length %s", len(codes), length)
    return codes


def enumerate_primitive(max_length: int):
    """
        All primitive necklaces (Lyndon words) of length 1..max_length,
        ordered by length and then lexicographically.
    """
    _check_length(max_length, 'max_length')
    codes = [OrbitCode(word=_as_text(word), nu=1) for word in lyndon_words(max_length)]
    codes.sort(key=lambda code: (code.length, code.word))
    return codes


def necklace_count(length: int) -> int:
    """Burnside count (1/n) sum_{d|n} phi(d) 2^(n/d)."""
    return sum(int(totient(d)) * 2 ** (length // d) for d in divisors(length)) // length


def primitive_count(length: int) -> int:
    """Moebius count (1/n) sum_{d|n} mu(d) 2^(n/d)."""
    return sum(int(mobius(d)) * 2 ** (length // d) for d in divisors(length)) // length

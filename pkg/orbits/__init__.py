from dataclasses import dataclass

from errors import ValidationError

ALPHABET = 'LR'


@dataclass(frozen=True, order=True)
class OrbitCode:
    """
        Periodic orbit as a binary necklace over {L, R}, stored as its
        lexicographically smallest rotation. `nu` counts how often the
        shortest sub-code repeats.
    """
    word: str
    nu: int = 1

    @property
    def length(self):
        return len(self.word)

    @property
    def primitive_length(self):
        return len(self.word) // self.nu

    @property
    def is_primitive(self):
        return self.nu == 1

    @property
    def root(self):
        return self.word[:self.primitive_length]

    @classmethod
    def from_word(cls, word: str):
        if not word or any(symbol not in ALPHABET for symbol in word):
            raise ValidationError('word', f'orbit codes are non-empty words over L and R, got {word!r}')
        canonical = min(word[shift:] + word[:shift] for shift in range(len(word)))
        return cls(word=canonical, nu=repetitions(canonical))

    def repeated(self, times: int):
        return OrbitCode(word=self.word * times, nu=self.nu * times)

    def __str__(self):
        return self.word


@dataclass(frozen=True)
class OrbitRecord:
    """
        Scattering counts and reduced action of one periodic orbit in a given potential.
        sigma counts step reflections, tau2 step transmissions.
    """
    code: OrbitCode
    n_L: int
    n_R: int
    sigma: int
    tau2: int
    rr_pairs: int
    chi_parity: int
    S0: float

    @property
    def word(self):
        return self.code.word

    @property
    def length(self):
        return self.code.length

    @property
    def is_newtonian(self):
        return self.sigma == 0

    def period(self, k):
        """T_p = dS_p/dE = S0/(2k)"""
        return self.S0 / (2.0 * k)


def repetitions(word: str) -> int:
    length = len(word)
    for period in range(1, length + 1):
        if length % period == 0 and word[:period] * (length // period) == word:
            return length // period
    return 1

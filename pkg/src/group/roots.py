"""
Root system of type G2, its Weyl group and the invariant form.

Characters of the diagonal torus are written in the basis of the simple roots:
``alpha`` (short) and ``beta`` (long). The Weyl group is the dihedral group of
order 12 generated by the two simple reflections; elements are identified by
their images of ``(alpha, beta)``.
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cache
from itertools import product
from typing import Union

Number = Union[int, Fraction]


class NotReducedError(ValueError):
    """Raised when a Weyl word is longer than the length of its product."""


class Simple(str, Enum):
    ALPHA = "alpha"
    BETA = "beta"


WeylWord = tuple[Simple, ...]

_LETTERS = {"a": Simple.ALPHA, "alpha": Simple.ALPHA, "b": Simple.BETA, "beta": Simple.BETA}


@dataclass(frozen=True)
class CharLattice:
    """Rational character ``alpha * alpha_root + beta * beta_root``."""

    alpha: Fraction
    beta: Fraction

    def __post_init__(self):
        object.__setattr__(self, "alpha", Fraction(self.alpha))
        object.__setattr__(self, "beta", Fraction(self.beta))

    def __add__(self, other: "CharLattice") -> "CharLattice":
        return CharLattice(self.alpha + other.alpha, self.beta + other.beta)

    def __sub__(self, other: "CharLattice") -> "CharLattice":
        return CharLattice(self.alpha - other.alpha, self.beta - other.beta)

    def __neg__(self) -> "CharLattice":
        return CharLattice(-self.alpha, -self.beta)

    def __mul__(self, factor: Number) -> "CharLattice":
        return CharLattice(self.alpha * factor, self.beta * factor)

    __rmul__ = __mul__

    def label(self) -> str:
        parts = []
        for coeff, name in ((self.alpha, "α"), (self.beta, "β")):
            if coeff == 0:
                continue
            text = name if abs(coeff) == 1 else f"{abs(coeff)}{name}"
            sign = "-" if coeff < 0 else "+"
            parts.append((sign, text))
        if not parts:
            return "0"
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, text in parts[1:]:
            out += f"{sign}{text}"
        return out


ALPHA_CHAR = CharLattice(1, 0)
BETA_CHAR = CharLattice(0, 1)

_POSITIVE_PAIRS = ((1, 0), (0, 1), (1, 1), (2, 1), (3, 1), (3, 2))


@dataclass(frozen=True, order=True)
class Root:
    """A root ``coeff_alpha * alpha + coeff_beta * beta`` of G2."""

    coeff_alpha: int
    coeff_beta: int

    def __post_init__(self):
        pair = (self.coeff_alpha, self.coeff_beta)
        if pair not in _POSITIVE_PAIRS and (-pair[0], -pair[1]) not in _POSITIVE_PAIRS:
            raise ValueError(f"{pair} is not a root of G2")

    @property
    def is_positive(self) -> bool:
        return (self.coeff_alpha, self.coeff_beta) in _POSITIVE_PAIRS

    @property
    def height(self) -> int:
        return self.coeff_alpha + self.coeff_beta

    def __neg__(self) -> "Root":
        return Root(-self.coeff_alpha, -self.coeff_beta)

    @property
    def character(self) -> CharLattice:
        return CharLattice(self.coeff_alpha, self.coeff_beta)

    def label(self) -> str:
        return self.character.label()


POSITIVE_ROOTS = tuple(Root(a, b) for a, b in _POSITIVE_PAIRS)
ROOTS = POSITIVE_ROOTS + tuple(-r for r in POSITIVE_ROOTS)
ALPHA = Root(1, 0)
BETA = Root(0, 1)
SIMPLE_ROOTS = {Simple.ALPHA: ALPHA, Simple.BETA: BETA}

# roots whose root spaces make up the unipotent radical N (all positive roots but beta)
N_ROOTS = tuple(r for r in POSITIVE_ROOTS if r != BETA)


def bilinear_form(first: CharLattice, second: CharLattice) -> Fraction:
    """W-invariant form with ``(alpha, alpha) = 1`` and ``(beta, beta) = 3``."""
    a, b = first.alpha, first.beta
    a2, b2 = second.alpha, second.beta
    return a * a2 + 3 * b * b2 - Fraction(3, 2) * (a * b2 + a2 * b)


def coroot_pairing(chi: CharLattice, root: CharLattice) -> Fraction:
    """``2 (chi, root) / (root, root)``."""
    return 2 * bilinear_form(chi, root) / bilinear_form(root, root)


def reflect(letter: Simple, chi: CharLattice) -> CharLattice:
    root = SIMPLE_ROOTS[letter].character
    return chi - root * coroot_pairing(chi, root)


def act(word: WeylWord, chi: CharLattice) -> CharLattice:
    """Apply ``w = s_1 ... s_k`` to ``chi``, rightmost letter first."""
    for letter in reversed(word):
        chi = reflect(letter, chi)
    return chi


def parse_word(text: str) -> WeylWord:
    """Parse ``"a,b,a"`` or ``"alpha beta"``; ``""`` or ``"e"`` is the empty word."""
    cleaned = text.replace(",", " ").split()
    if cleaned in ([], ["e"]):
        return ()
    try:
        return tuple(_LETTERS[token.lower()] for token in cleaned)
    except KeyError as exc:
        raise ValueError(f"word letters must be alpha/beta (a/b), got {text!r}") from exc


def word_label(word: WeylWord) -> str:
    if not word:
        return "e"
    return "".join("a" if letter is Simple.ALPHA else "b" for letter in word)


WeylKey = tuple[CharLattice, CharLattice]


def element_key(word: WeylWord) -> WeylKey:
    return act(word, ALPHA_CHAR), act(word, BETA_CHAR)


@cache
def weyl_group() -> dict[WeylKey, tuple[WeylWord, ...]]:
    """All 12 elements with every reduced word, found by exhaustive enumeration."""
    reduced: dict[WeylKey, list[WeylWord]] = {}
    length_of: dict[WeylKey, int] = {}
    for length in range(0, 7):
        for word in product((Simple.ALPHA, Simple.BETA), repeat=length):
            key = element_key(word)
            if key not in length_of:
                length_of[key] = length
                reduced[key] = []
            if length_of[key] == length:
                reduced[key].append(word)
    return {key: tuple(words) for key, words in reduced.items()}


def weyl_length(word: WeylWord) -> int:
    return len(weyl_group()[element_key(word)][0])


def is_reduced(word: WeylWord) -> bool:
    return len(word) == weyl_length(word)


def reduced_word(word: WeylWord) -> WeylWord:
    """First reduced word (in enumeration order) for the same element."""
    return weyl_group()[element_key(word)][0]


def require_reduced(word: WeylWord) -> WeylWord:
    if not is_reduced(word):
        shorter = reduced_word(word)
        raise NotReducedError(
            f"word {word_label(word)} is not reduced; {word_label(shorter)} "
            "represents the same element"
        )
    return word


LONG_WORD: WeylWord = (Simple.ALPHA, Simple.BETA) * 3
W0_WORD: WeylWord = (Simple.ALPHA, Simple.BETA, Simple.ALPHA, Simple.BETA, Simple.ALPHA)

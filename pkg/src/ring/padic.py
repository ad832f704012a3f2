"""
p-adic valuations of rationals.

Valuations are ints, with ``math.inf`` standing for the valuation of zero so
that ``min`` and ``+`` behave as in the extended integers.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Union

import numpy as np
from sympy import isprime, multiplicity
from sympy.polys.rings import PolyElement

from src.ring.kernel import SYMBOL_NAMES

PadicVal = Union[int, float]

INFINITY: PadicVal = math.inf


class NotPrimeError(ValueError):
    """Raised when a valuation is requested at a non-prime."""


def require_prime(p: int) -> int:
    if not isinstance(p, int) or not isprime(p):
        raise NotPrimeError(f"p must be prime, got {p!r}")
    return p


def vp(x: Union[int, Fraction], p: int) -> PadicVal:
    """Exact p-adic valuation.

    Args:
        x: Rational number
        p: Prime

    Returns:
        ``v_p(x)``, or ``math.inf`` for zero

    Raises:
        NotPrimeError: If ``p`` is not prime.

    Example:
        >>> vp(Fraction(3, 4), 2)
        -2
    """
    require_prime(p)
    value = Fraction(x)
    if value == 0:
        return INFINITY
    return multiplicity(p, abs(value.numerator)) - multiplicity(p, value.denominator)


def random_unit(rng: np.random.Generator, p: int, bound: int = 50) -> Fraction:
    """Random rational of valuation zero with numerator and denominator below ``bound``."""
    while True:
        numerator = int(rng.integers(1, bound))
        denominator = int(rng.integers(1, bound))
        if numerator % p and denominator % p:
            sign = -1 if rng.integers(0, 2) else 1
            return Fraction(sign * numerator, denominator)


def with_valuation(rng: np.random.Generator, p: int, valuation: int) -> Fraction:
    """Random rational of exact valuation ``valuation``."""
    return random_unit(rng, p) * Fraction(p) ** valuation


@dataclass(frozen=True)
class Scaled:
    """Exact rational ``mantissa * p**exponent`` kept factored.

    Sums of terms with very different valuations stay cheap: only the
    mantissas (small denominators) are combined, never ``p``-power denominators.
    """

    mantissa: Fraction
    exponent: int

    def value(self, p: int) -> Fraction:
        return self.mantissa * Fraction(p) ** self.exponent

    def at_least(self, bound: PadicVal, p: int) -> bool:
        """``v_p(value) >= bound`` without computing the valuation."""
        if not self.mantissa:
            return True
        if bound == INFINITY:
            return False
        needed = bound - self.exponent + vp(self.mantissa.denominator, p)
        if needed <= 0:
            return True
        return self.mantissa.numerator % p**needed == 0

    def valuation(self, p: int) -> PadicVal:
        return vp(self.mantissa, p) + self.exponent if self.mantissa else INFINITY


ZERO_SCALED = Scaled(Fraction(0), 0)


def sample_scaled(rng: np.random.Generator, p: int, exponent: int) -> Scaled:
    """Random element of exact valuation ``exponent``."""
    return Scaled(random_unit(rng, p), exponent)


def scaled_evaluate(poly: PolyElement, point: Mapping[str, Scaled], p: int) -> Scaled:
    """Evaluate a polynomial of the symbol ring at factored rationals.

    Args:
        poly: Polynomial over QQ in the global namespace
        point: Factored value of every symbol that occurs in ``poly``
        p: Prime of the factorization

    Returns:
        The exact value, factored at the least term exponent

    Raises:
        KeyError: If a symbol of ``poly`` has no value.
    """
    terms: list[tuple[Fraction, int]] = []
    for monom, coeff in poly.terms():
        mantissa = Fraction(int(coeff.numerator), int(coeff.denominator))
        exponent = 0
        for index, power in enumerate(monom):
            if not power:
                continue
            factor = point[SYMBOL_NAMES[index]]
            mantissa *= factor.mantissa**power
            exponent += factor.exponent * power
        if mantissa:
            terms.append((mantissa, exponent))
    if not terms:
        return ZERO_SCALED
    base = min(exponent for _, exponent in terms)
    return Scaled(sum(m * p ** (e - base) for m, e in terms), base)

"""Seeded random rationals, polynomials and rational functions for property checks."""

from fractions import Fraction
from typing import Sequence

import numpy as np

from src.ring.kernel import FIELD, RatFn, as_ratfn, sym

DEFAULT_SYMBOLS = ("x21", "x31", "x32")


def random_rat(rng: np.random.Generator, bound: int = 9, max_den: int = 5) -> Fraction:
    return Fraction(int(rng.integers(-bound, bound + 1)), int(rng.integers(1, max_den + 1)))


def random_nonzero_rat(rng: np.random.Generator, bound: int = 9, max_den: int = 5) -> Fraction:
    while True:
        value = random_rat(rng, bound, max_den)
        if value:
            return value


def random_poly(
    rng: np.random.Generator,
    symbols: Sequence[str] = DEFAULT_SYMBOLS,
    terms: int = 3,
    max_degree: int = 2,
) -> RatFn:
    """Sparse random polynomial with at most ``terms`` monomials."""
    total = FIELD.zero
    for _ in range(terms):
        monomial = as_ratfn(random_rat(rng))
        for name in symbols:
            exponent = int(rng.integers(0, max_degree + 1))
            if exponent:
                monomial = monomial * sym(name) ** exponent
        total = total + monomial
    return total


def random_ratfn(rng: np.random.Generator, symbols: Sequence[str] = DEFAULT_SYMBOLS) -> RatFn:
    """Quotient of two random polynomials with a nonzero denominator."""
    numer = random_poly(rng, symbols)
    while True:
        denom = random_poly(rng, symbols, terms=2)
        if denom:
            return numer / denom


def check_seed(seed: int, check_id: str) -> np.random.Generator:
    """Generator derived from the master seed and a check name, stable across runs."""
    mixed = [seed] + [ord(ch) for ch in check_id]
    return np.random.default_rng(mixed)

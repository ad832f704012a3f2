"""Weighted gradings on the symbol namespace."""

from types import MappingProxyType
from typing import Mapping, Optional

from sympy.polys.rings import PolyElement

from src.ring.kernel import SYMBOL_NAMES, Scalar, as_ratfn, symbol_index


class GradingError(ValueError):
    """Raised when a polynomial mentions a symbol the grading does not weigh."""


class Grading:
    """
    Integer weights attached to symbols.

    A monomial has weighted degree ``sum(exponent * weight)``; a polynomial is
    homogeneous when all its monomials share one degree.

    Attributes:
        weights (Mapping[str, int]): read-only symbol -> weight map
    """

    __slots__ = ("weights", "_vector")

    def __init__(self, weights: Mapping[str, int]):
        vector: list[Optional[int]] = [None] * len(SYMBOL_NAMES)
        for name, weight in weights.items():
            if not isinstance(weight, int):
                raise ValueError(f"weight of {name} must be an integer, got {weight!r}")
            vector[symbol_index(name)] = weight
        self.weights = MappingProxyType(dict(weights))
        self._vector = tuple(vector)

    def monomial_degree(self, monom: tuple[int, ...]) -> int:
        degree = 0
        for index, exponent in enumerate(monom):
            if not exponent:
                continue
            weight = self._vector[index]
            if weight is None:
                raise GradingError(f"symbol {SYMBOL_NAMES[index]} has no weight")
            degree += exponent * weight
        return degree

    def homogeneous_degree(self, poly: PolyElement) -> Optional[int]:
        """Degree of a homogeneous polynomial, ``None`` otherwise. Zero has degree 0."""
        degrees = {self.monomial_degree(monom) for monom in poly.monoms()}
        if not degrees:
            return 0
        if len(degrees) > 1:
            return None
        return degrees.pop()

    def __repr__(self) -> str:
        return f"Grading({dict(self.weights)})"


SCALING_GRADING = Grading({"x21": 1, "x31": 1, "x32": 2})


def weighted_degree(f: Scalar, grading: Grading) -> Optional[int]:
    """Weighted degree of a quotient of homogeneous polynomials.

    Args:
        f: Rational function (or constant)
        grading: Symbol weights

    Returns:
        ``deg(num) - deg(den)`` when both are homogeneous, ``None`` when either is not

    Raises:
        GradingError: If a symbol of ``f`` has no weight.

    Example:
        >>> weighted_degree(parse("x21^2 + x32"), SCALING_GRADING)
        2
    """
    f = as_ratfn(f)
    numer = grading.homogeneous_degree(f.numer)
    denom = grading.homogeneous_degree(f.denom)
    if numer is None or denom is None:
        return None
    return numer - denom

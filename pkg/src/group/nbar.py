"""
Multiplication in the opposite radical and its compact subgroups.

The group law of ``Nbar`` in exponential coordinates is derived once from
``log(exp(Y) exp(Y'))`` and cached as five polynomials in ``y..`` and ``yp..``.
The subgroups ``Nbar_kappa`` are valuation boxes
``(-kappa^2, -kappa, -kappa^3, -kappa^5, -kappa^4)``; their closure is certified
tropically (each output coordinate is bounded by the least valuation of the
monomials of its polynomial) and their behaviour under conjugation by the
Levi factor is computed exactly.
"""

import logging
from dataclasses import dataclass, fields
from fractions import Fraction
from functools import cache
from typing import Optional, Sequence

import numpy as np

from src.group.bigcell import NBAR_COORDINATES, NbarCoords, nbar_from_matrix, nbar_matrix
from src.group.levi import GL2Elem, embed_M, u_matrix
from src.matrix.mat7 import mat_inv, mat_mul
from src.ring.kernel import (
    NBAR_INDICES,
    SYMBOL_NAMES,
    RatFn,
    Scalar,
    is_constant,
    parse,
    substitute,
    sym,
    to_rat,
)
from src.ring.padic import (
    INFINITY,
    PadicVal,
    Scaled,
    require_prime,
    sample_scaled,
    scaled_evaluate,
    vp,
)

log = logging.getLogger(__name__)

LAW_NAMES = tuple(f"z{ij}" for ij in NBAR_INDICES)
PRIMED = tuple(f"yp{ij}" for ij in NBAR_INDICES)
DOUBLE_PRIMED = tuple(f"ypp{ij}" for ij in NBAR_INDICES)


class ResidueCharacteristicError(ValueError):
    """Raised when the plain tropical bound is asked for at p = 2 or 3."""


def generic_nbar(names: Sequence[str] = NBAR_COORDINATES) -> NbarCoords:
    return NbarCoords(*(sym(name) for name in names))


@cache
def group_law() -> dict[str, RatFn]:
    """``z = log(exp(y) exp(y'))`` as polynomials in ``y10..y32`` and ``yp10..yp32``."""
    product = mat_mul(nbar_matrix(generic_nbar()), nbar_matrix(generic_nbar(PRIMED)))
    z = nbar_from_matrix(product)
    law = dict(zip(LAW_NAMES, z.values()))
    log.debug("derived group law: %s", law)
    return law


@cache
def _law_terms() -> dict[str, tuple[tuple[Fraction, tuple[tuple[str, int], ...]], ...]]:
    terms = {}
    for name, poly in group_law().items():
        rows = []
        for monom, coeff in poly.numer.terms():
            powers = tuple((SYMBOL_NAMES[i], e) for i, e in enumerate(monom) if e)
            rows.append((Fraction(int(coeff.numerator), int(coeff.denominator)), powers))
        terms[name] = tuple(rows)
    return terms


def _bindings(y: NbarCoords, y_prime: NbarCoords) -> dict[str, Scalar]:
    bindings = dict(y.as_dict())
    bindings.update(zip(PRIMED, y_prime.values()))
    return bindings


def nbar_mul(y: NbarCoords, y_prime: NbarCoords) -> NbarCoords:
    """Coordinates of ``exp(y) exp(y')``.

    Numeric inputs are evaluated term by term in Fractions; symbolic inputs are
    composed into the cached polynomials.

    Example:
        >>> nbar_mul(NbarCoords(y10=1), NbarCoords(y11=1)).y21
        Fraction(-1, 1)
    """
    bindings = _bindings(y, y_prime)
    if all(is_constant(value) for value in bindings.values()):
        point = {name: to_rat(value) for name, value in bindings.items()}
        values = []
        for name in LAW_NAMES:
            total = Fraction(0)
            for coeff, powers in _law_terms()[name]:
                term = coeff
                for symbol, exponent in powers:
                    term *= point[symbol] ** exponent
                total += term
            values.append(total)
        return NbarCoords(*values)
    return NbarCoords(*(substitute(group_law()[name], bindings) for name in LAW_NAMES))


def nbar_inverse(y: NbarCoords) -> NbarCoords:
    """Coordinates of ``exp(y)^-1`` read from the matrix inverse."""
    return nbar_from_matrix(mat_inv(nbar_matrix(y)))


def associativity_holds() -> bool:
    """``(y y') y'' = y (y' y'')`` as an identity in 15 variables."""
    y, y1, y2 = generic_nbar(), generic_nbar(PRIMED), generic_nbar(DOUBLE_PRIMED)
    return nbar_mul(nbar_mul(y, y1), y2) == nbar_mul(y, nbar_mul(y1, y2))


# printed forms; {z10p} and {y21_term} are the two unclear symbols
REFERENCE_GROUP_LAW = {
    "z10": "y10 + yp10",
    "z11": "y11 + yp11",
    "z21": "y11*yp10 - y10*yp11 + y21 + yp21",
    "z31": (
        "1/2*(-y10*y11*{z10p} + y11*yp10^2 + y10^2*yp11 - y10*yp10*yp11)"
        " + 3/2*(y21*yp10 - y10*yp21) + y31 + yp31"
    ),
    "z32": (
        "1/2*(-y11^2*yp10 + y10*y11*yp11 + y11*yp10*yp11 - y10*yp11^2 - y11*{y21_term})"
        " + 3/2*y21*yp11 - y11*yp21 + y32 + yp32"
    ),
}

READINGS = {
    "z31": {"z10p": {"y10'": "yp10", "z10 = y10 + y10'": "(y10 + yp10)", "y10": "y10"}},
    "z32": {"y21_term": {"y21": "y21", "y21'": "yp21"}},
}


def matching_readings() -> dict[str, list[str]]:
    """For each ambiguous printed formula, the readings that equal the derived law."""
    law = group_law()
    matches: dict[str, list[str]] = {}
    for name, slots in READINGS.items():
        ((slot, options),) = slots.items()
        matches[name] = [
            label
            for label, text in options.items()
            if parse(REFERENCE_GROUP_LAW[name].format(**{slot: text})) == law[name]
        ]
    return matches


@dataclass(frozen=True)
class ValVec:
    """Lower bounds on ``v_p(y10), ..., v_p(y32)``; ``inf`` forces a coordinate to zero."""

    v10: PadicVal
    v11: PadicVal
    v21: PadicVal
    v31: PadicVal
    v32: PadicVal

    def values(self) -> tuple[PadicVal, ...]:
        return tuple(getattr(self, f.name) for f in fields(self))

    def as_dict(self) -> dict[str, PadicVal]:
        return dict(zip(NBAR_COORDINATES, self.values()))

    def dominates(self, other: "ValVec") -> bool:
        """Componentwise ``self >= other``: the box of ``self`` lies in the box of ``other``."""
        return all(a >= b for a, b in zip(self.values(), other.values()))

    def contains(self, y: NbarCoords, p: int) -> bool:
        return all(vp(value, p) >= bound for value, bound in zip(y.values(), self.values()))

    def shifted(self, shifts: Sequence[int]) -> "ValVec":
        return ValVec(*(bound + shift for bound, shift in zip(self.values(), shifts)))


@dataclass(frozen=True)
class KappaBox:
    kappa: int
    p: int

    def __post_init__(self):
        if not isinstance(self.kappa, int) or self.kappa < 1:
            raise ValueError(f"kappa must be a positive integer, got {self.kappa!r}")
        require_prime(self.p)

    @property
    def bounds(self) -> ValVec:
        k = self.kappa
        return ValVec(-(k**2), -k, -(k**3), -(k**5), -(k**4))

    def contains(self, y: NbarCoords) -> bool:
        return self.bounds.contains(y, self.p)

    def sample_boundary(self, rng: np.random.Generator) -> dict[str, Scaled]:
        """Factored coordinates of exact valuation equal to the bounds."""
        return {
            name: sample_scaled(rng, self.p, bound)
            for name, bound in self.bounds.as_dict().items()
        }


def trop_mul_bound(b: ValVec, b_prime: ValVec, p: int, constant_aware: bool = False) -> ValVec:
    """Guaranteed lower bounds on the valuations of a product.

    Each output coordinate is bounded by the least, over the monomials of its
    polynomial, of the summed input bounds (plus ``v_p`` of the coefficient in
    constant-aware mode).

    Args:
        b: Bounds for the left factor
        b_prime: Bounds for the right factor
        p: Prime
        constant_aware: Account for the valuation of the rational coefficients

    Returns:
        Bounds for ``nbar_mul``

    Raises:
        ResidueCharacteristicError: In plain mode for ``p < 5``, where the
            coefficients 1/2 and 3/2 are not units.
    """
    require_prime(p)
    if p < 5 and not constant_aware:
        raise ResidueCharacteristicError(
            f"plain tropical bound needs p >= 5, got {p}; use constant_aware=True"
        )
    inputs = dict(zip(NBAR_COORDINATES, b.values()))
    inputs.update(zip(PRIMED, b_prime.values()))
    bounds = []
    for name in LAW_NAMES:
        best: PadicVal = INFINITY
        for coeff, powers in _law_terms()[name]:
            value: PadicVal = vp(coeff, p) if constant_aware else 0
            for symbol, exponent in powers:
                value += exponent * inputs[symbol]
            best = min(best, value)
        bounds.append(best)
    return ValVec(*bounds)


def zm_conjugation() -> NbarCoords:
    """``z exp(y) z^-1`` for ``z = embed_M(t I_2)``, symbolic in ``t`` and ``y``."""
    t = sym("t")
    scalar = GL2Elem.scalar(t)
    conjugate = mat_mul(
        mat_mul(embed_M(scalar), nbar_matrix(generic_nbar())), embed_M(scalar.inverse())
    )
    return nbar_from_matrix(conjugate)


def zm_exponents() -> tuple[Optional[int], ...]:
    """Exponent ``e`` with ``(z y z^-1)_ij = t^e y_ij``, or ``None`` when not a monomial."""
    t = sym("t")
    exponents = []
    for name, value in zm_conjugation().as_dict().items():
        ratio = value / sym(name)
        exponents.append(next((e for e in range(-6, 7) if ratio == t**e), None))
    return tuple(exponents)


UM_CONJUGATION_FORMS = {
    "y10": "y10 - x*y11",
    "y11": "y11",
    "y21": "y21",
    "y31": "y31 - x*y32",
    "y32": "y32",
}


@cache
def um_conjugation() -> NbarCoords:
    """``u exp(y) u^-1`` for ``u = exp(x X01)``, symbolic in ``x`` and ``y``."""
    u = u_matrix(sym("x"))
    return nbar_from_matrix(mat_mul(mat_mul(u, nbar_matrix(generic_nbar())), mat_inv(u)))


def um_conjugation_matches() -> bool:
    computed = um_conjugation().as_dict()
    return all(parse(UM_CONJUGATION_FORMS[name]) == computed[name] for name in NBAR_COORDINATES)


def u1_threshold(kappas: Sequence[int], c: int) -> Optional[int]:
    """Least ``kappa`` from which ``U1 = {v(x) >= c}`` conjugation preserves every box.

    Conjugation moves ``y10`` by ``x y11`` and ``y31`` by ``x y32``; the box is
    preserved when ``kappa^2 - kappa >= -c`` and ``kappa^5 - kappa^4 >= -c``.
    """
    return least_stable({kappa: u1_stable(kappa, c) for kappa in kappas})


def u1_stable(kappa: int, c: int) -> bool:
    return kappa**2 - kappa >= -c and kappa**5 - kappa**4 >= -c


def u1_bound_stable(kappa: int, c: int, p: int) -> bool:
    """``U1`` stability read off the conjugation forms monomial by monomial.

    ``x`` is bounded by ``c`` and each ``y`` by its box bound; every monomial of
    a conjugated coordinate must then meet that coordinate's bound.
    """
    box = KappaBox(kappa, p).bounds.as_dict()
    inputs = {**box, "x": c}
    for name, text in UM_CONJUGATION_FORMS.items():
        for monom, coeff in parse(text).numer.terms():
            value = vp(Fraction(int(coeff.numerator), int(coeff.denominator)), p)
            for index, exponent in enumerate(monom):
                if exponent:
                    value += exponent * inputs[SYMBOL_NAMES[index]]
            if value < box[name]:
                return False
    return True


def least_stable(flags: dict[int, bool]) -> Optional[int]:
    ordered = sorted(flags)
    for index, kappa in enumerate(ordered):
        if all(flags[k] for k in ordered[index:]):
            return kappa
    return None


@dataclass(frozen=True)
class KappaRow:
    kappa: int
    bounds: ValVec
    product_bounds: ValVec
    closed: bool
    inverse_closed: bool
    u1_stable: bool
    u1_bound_stable: bool
    sampled_products: int
    product_violations: int
    sampled_conjugates: int
    conjugate_violations: int


@dataclass(frozen=True)
class KappaBoxReport:
    p: int
    constant_aware: bool
    u1_valuation: int
    rows: tuple[KappaRow, ...]
    minimal_certified_kappa: Optional[int]
    kappa0: Optional[int]
    kappa0_closed_form: Optional[int]
    kappa0_bound: Optional[int]
    zm_exponents: tuple[Optional[int], ...]
    um_conjugation_matches: bool
    inverse_is_negation: bool
    identity_conjugation: bool

    @property
    def soundness_violations(self) -> int:
        return sum(row.product_violations for row in self.rows)

    @property
    def passed(self) -> bool:
        return (
            self.minimal_certified_kappa is not None
            and self.kappa0 is not None
            and self.kappa0 == self.kappa0_closed_form == self.kappa0_bound
            and all(row.u1_stable == row.u1_bound_stable for row in self.rows)
            and self.zm_exponents == EXPECTED_ZM_EXPONENTS
            and self.um_conjugation_matches
            and self.inverse_is_negation
            and self.identity_conjugation
            and self.soundness_violations == 0
        )


EXPECTED_ZM_EXPONENTS = (-1, -1, -2, -3, -3)


def _sample_product_violations(
    box: KappaBox, trop: ValVec, rng: np.random.Generator, count: int
) -> int:
    law = group_law()
    violations = 0
    for _ in range(count):
        point = box.sample_boundary(rng)
        point.update(zip(PRIMED, box.sample_boundary(rng).values()))
        for name, bound in zip(LAW_NAMES, trop.values()):
            if not scaled_evaluate(law[name].numer, point, box.p).at_least(bound, box.p):
                violations += 1
                break
    return violations


def _sample_conjugate_violations(
    box: KappaBox, c: int, rng: np.random.Generator, count: int
) -> int:
    forms = {name: parse(text).numer for name, text in UM_CONJUGATION_FORMS.items()}
    violations = 0
    for _ in range(count):
        point = box.sample_boundary(rng)
        point["x"] = sample_scaled(rng, box.p, c)
        for name, bound in box.bounds.as_dict().items():
            if not scaled_evaluate(forms[name], point, box.p).at_least(bound, box.p):
                violations += 1
                break
    return violations


def kappa_box_certificate(
    kappa_range: Sequence[int],
    p: int,
    samples: int,
    u1_valuation: int,
    seed: int,
    boundary_samples: Optional[int] = None,
) -> KappaBoxReport:
    """Closure, Levi equivariance and ``U1`` stability of the boxes ``Nbar_kappa``.

    Args:
        kappa_range: The kappas to examine
        p: Prime; 2 and 3 switch to the constant-aware tropical bound
        samples: Sampled conjugates per kappa; every kappa is sampled
        u1_valuation: ``c`` in ``U1 = {x : v_p(x) >= c}``
        seed: Seed of the sampling generator
        boundary_samples: Sampled products in total for the soundness check;
            defaults to ``samples`` per kappa

    Returns:
        Per-kappa rows, the least certified kappa, the ``U1`` threshold found by
        sampling (cross-checked against the closed-form inequality and the
        monomial bound) and the exact conjugation data
    """
    require_prime(p)
    kappas = sorted(set(kappa_range))
    if not kappas:
        raise ValueError("kappa_range must not be empty")
    constant_aware = p < 5
    rng = np.random.default_rng(seed)
    per_kappa = samples if boundary_samples is None else max(1, boundary_samples // len(kappas))

    generic = generic_nbar()
    inverse_is_negation = nbar_inverse(generic) == -generic
    conjugated = um_conjugation().as_dict()
    identity = all(
        substitute(conjugated[name], {"x": 0}) == value for name, value in generic.as_dict().items()
    )

    rows = []
    for kappa in kappas:
        box = KappaBox(kappa, p)
        trop = trop_mul_bound(box.bounds, box.bounds, p, constant_aware=constant_aware)
        stable = u1_stable(kappa, u1_valuation)
        conjugate_violations = _sample_conjugate_violations(box, u1_valuation, rng, samples)
        rows.append(
            KappaRow(
                kappa=kappa,
                bounds=box.bounds,
                product_bounds=trop,
                closed=trop.dominates(box.bounds),
                inverse_closed=inverse_is_negation,
                u1_stable=stable,
                u1_bound_stable=u1_bound_stable(kappa, u1_valuation, p),
                sampled_products=per_kappa,
                product_violations=_sample_product_violations(box, trop, rng, per_kappa),
                sampled_conjugates=samples,
                conjugate_violations=conjugate_violations,
            )
        )
        log.info(
            "kappa=%d closed=%s u1_stable=%s conjugate_violations=%d",
            kappa,
            rows[-1].closed,
            stable,
            conjugate_violations,
        )

    return KappaBoxReport(
        p=p,
        constant_aware=constant_aware,
        u1_valuation=u1_valuation,
        rows=tuple(rows),
        minimal_certified_kappa=least_stable({row.kappa: row.closed for row in rows}),
        kappa0=least_stable({row.kappa: row.conjugate_violations == 0 for row in rows}),
        kappa0_closed_form=u1_threshold(kappas, u1_valuation),
        kappa0_bound=least_stable({row.kappa: row.u1_bound_stable for row in rows}),
        zm_exponents=zm_exponents(),
        um_conjugation_matches=um_conjugation_matches(),
        inverse_is_negation=inverse_is_negation,
        identity_conjugation=identity,
    )

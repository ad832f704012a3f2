"""
Big cell decomposition ``w0^-1 exp(n) = embed_M(m) exp(n') exp(nbar)``.

For ``n`` in the fundamental domain ``D0`` the factor ``nbar`` has closed forms
whose denominators are powers of ``D = x21^2 + x32`` (``x21^2 + x10 x32`` on
``D``). The Levi part ``m`` is read off the upper-left block of
``w0^-1 exp(n) exp(nbar)^-1`` and factored in the Bruhat cell of GL2.

``solve_nbar`` recovers ``nbar`` without the closed forms and is the oracle
for them. ``homogeneity_certificate`` computes the weights of every quantity
under the scaling ``(x21, x31, x32) -> (t x21, t x31, t^2 x32)``.
"""

import logging
from dataclasses import dataclass, fields
from fractions import Fraction
from functools import cache
from typing import Optional

from src.group.levi import (
    P_PATTERN,
    DomainKind,
    DomainPoint,
    GL2Elem,
    NCoords,
    PatternError,
    SingularLeviError,
    embed_M,
    n_from_matrix,
    n_matrix,
)
from src.group.realization import (
    NEGATIVE_ROOT_COORDINATE,
    CertificationError,
    LieCoords,
    NotInRealizationError,
    lie_from_matrix,
    lie_to_matrix,
    w0,
    w0_inverse,
)
from src.matrix.mat7 import (
    Mat7,
    NotNilpotentError,
    exp_nilpotent,
    log_unipotent,
    mat_mul,
    violations,
)
from src.ring.grading import SCALING_GRADING, weighted_degree
from src.ring.kernel import RatFn, Scalar, like, parse, substitute, unify

log = logging.getLogger(__name__)


class DiscriminantError(ValueError):
    """Raised when the discriminant x21^2 + x10 x32 vanishes."""


class OutsideBigCellError(ValueError):
    """Raised when a GL2 element has c = 0."""


class PatternCertificationError(RuntimeError):
    """Raised when the computed factors break the shape of P or the product identity."""


class InconsistentSystemError(RuntimeError):
    """Raised when the triangular solve for nbar leaves a nonzero residual."""


@dataclass(frozen=True)
class NbarCoords:
    """Coordinates of ``exp(sum y_ij Y_ij)`` in the opposite unipotent radical."""

    y10: Scalar = 0
    y11: Scalar = 0
    y21: Scalar = 0
    y31: Scalar = 0
    y32: Scalar = 0

    def __post_init__(self):
        values = unify(*(getattr(self, name) for name in NBAR_COORDINATES))
        for name, value in zip(NBAR_COORDINATES, values):
            object.__setattr__(self, name, value)

    def values(self) -> tuple[Scalar, ...]:
        return tuple(getattr(self, name) for name in NBAR_COORDINATES)

    def as_dict(self) -> dict[str, Scalar]:
        return dict(zip(NBAR_COORDINATES, self.values()))

    def to_lie(self) -> LieCoords:
        return LieCoords(**self.as_dict())

    def __neg__(self) -> "NbarCoords":
        return NbarCoords(*(-v for v in self.values()))


NBAR_COORDINATES = tuple(f.name for f in fields(NbarCoords))


def nbar_matrix(nbar: NbarCoords) -> Mat7:
    return exp_nilpotent(lie_to_matrix(nbar.to_lie()))


def nbar_from_matrix(matrix: Mat7) -> NbarCoords:
    """Coordinates of a matrix in the opposite radical.

    Raises:
        PatternError: If the matrix is not the exponential of an element of its Lie algebra.
    """
    try:
        coords = lie_from_matrix(log_unipotent(matrix))
    except (NotNilpotentError, NotInRealizationError) as exc:
        raise PatternError(f"matrix is not unipotent in the realization: {exc}") from exc
    values = coords.as_dict()
    stray = [name for name, value in values.items() if value and name not in NBAR_COORDINATES]
    if stray:
        raise PatternError(f"matrix left the opposite radical, nonzero coordinates {stray}")
    return NbarCoords(**{name: values[name] for name in NBAR_COORDINATES})


def discriminant(point: DomainPoint) -> Scalar:
    c = point.coords
    return c.x21**2 + c.x10 * c.x32


def nbar_closed_form(x21: Scalar, x31: Scalar, x32: Scalar, x10: Scalar = 1) -> NbarCoords:
    """Closed forms of ``nbar`` for ``n = (x10, 0, x21, x31, x32)``.

    Args:
        x21: Coordinate of the root 2 alpha + beta
        x31: Coordinate of 3 alpha + beta
        x32: Coordinate of 3 alpha + 2 beta
        x10: Coordinate of alpha; 1 on ``D0``

    Returns:
        ``(x32, x10 x21/2 - x31, x21) / D`` and
        ``(-x21 x32 / 2, 3/4 x10 x21^2 + x10^2 x32 + x21 x31 / 2) / D^2``

    Raises:
        DiscriminantError: If ``D = x21^2 + x10 x32`` is zero.

    Example:
        >>> nbar_closed_form(1, 0, 0).values()
        (Fraction(0, 1), Fraction(1, 2), Fraction(1, 1), Fraction(0, 1), Fraction(3, 4))
    """
    x10, x21, x31, x32 = unify(x10, x21, x31, x32)
    disc = x21**2 + x10 * x32
    if not disc:
        raise DiscriminantError("discriminant vanishes: x21^2 + x10*x32 = 0")
    half = like(Fraction(1, 2), x21)
    three_quarters = like(Fraction(3, 4), x21)
    return NbarCoords(
        y10=x32 / disc,
        y11=(half * x10 * x21 - x31) / disc,
        y21=x21 / disc,
        y31=-half * x21 * x32 / disc**2,
        y32=(three_quarters * x10 * x21**2 + x10**2 * x32 + half * x21 * x31) / disc**2,
    )


# printed closed forms on D0; three of them carry the opposite sign
REFERENCE_NBAR = {
    "y10": "-x32/(x21^2 + x32)",
    "y11": "(-x31 + 1/2*x21)/(x21^2 + x32)",
    "y21": "-x21/(x21^2 + x32)",
    "y31": "1/2*x32*x21/(x21^2 + x32)^2",
    "y32": "(3/4*x21^2 + x10^2*x32 + 1/2*x21*x31)/(x21^2 + x32)^2",
}

# Levi entries as polynomials in the nbar coordinates
M_ENTRY_FORMS = {
    "a": "y10*y11 + y21",
    "b": "y10^2",
    "c": "-y11^2 + 1/2*y11*y21 - y32",
    "d": "-y10*y11 + 1/2*y10*y21 + y21 - y31",
}

REFERENCE_M_ENTRIES = {
    "a": "y10*y11 + y21",
    "b": "y10^2",
    "c": "-y11^2 + 1/2*y11*y21 - y32",
    "d": "-y10*y11 + 1/2*y10*y11 + y21 - y31",
}

D_VARIANTS = {
    "printed": "-y10*y11 + 1/2*y10*y11 + y21 - y31",
    "printed_simplified": "-1/2*y10*y11 + y21 - y31",
    "derived": "-y10*y11 + 1/2*y10*y21 + y21 - y31",
}


@dataclass(frozen=True)
class BigCellDecomp:
    m: GL2Elem
    nprime: NCoords
    nbar: NbarCoords
    discriminant: Scalar


def decompose(point: DomainPoint) -> BigCellDecomp:
    """Factor ``w0^-1 exp(n)`` as ``embed_M(m) exp(n') exp(nbar)``.

    ``nbar`` comes from the closed forms, ``m`` is the upper-left block of
    ``p = w0^-1 exp(n) exp(nbar)^-1`` and ``n'`` is ``log(embed_M(m)^-1 p)``.
    The product identity is re-verified before returning.

    Args:
        point: Point of ``D0`` (or of ``D`` for the general-``x10`` forms)

    Returns:
        The decomposition with its discriminant

    Raises:
        DiscriminantError: If the discriminant vanishes.
        PatternCertificationError: If ``p`` is not in P or the factors do not multiply back.
    """
    c = point.coords
    nbar = nbar_closed_form(c.x21, c.x31, c.x32, x10=c.x10)
    target = mat_mul(w0_inverse(), n_matrix(c))
    p = mat_mul(target, nbar_matrix(-nbar))
    bad = violations(p, P_PATTERN)
    if bad:
        raise PatternCertificationError(f"w0^-1 n nbar^-1 breaks the shape of P at {bad}")
    try:
        m = GL2Elem(p[0, 0], p[0, 1], p[1, 0], p[1, 1])
        nprime = n_from_matrix(mat_mul(embed_M(m.inverse()), p))
    except (SingularLeviError, PatternError) as exc:
        raise PatternCertificationError(f"cannot peel the Levi factor: {exc}") from exc
    rebuilt = mat_mul(mat_mul(embed_M(m), n_matrix(nprime)), nbar_matrix(nbar))
    if rebuilt != target:
        raise PatternCertificationError("embed_M(m) exp(n') exp(nbar) != w0^-1 exp(n)")
    return BigCellDecomp(m=m, nprime=nprime, nbar=nbar, discriminant=discriminant(point))


@cache
def symbolic_decomposition(kind: DomainKind = DomainKind.D0) -> BigCellDecomp:
    """Decomposition at the generic point; 49 rational-function identities are checked."""
    log.info("decomposing the generic point of %s", DomainKind(kind).value)
    return decompose(DomainPoint.symbolic(kind))


def m_entries_from_forms(
    nbar: NbarCoords, forms: dict[str, str] = M_ENTRY_FORMS
) -> dict[str, RatFn]:
    """Evaluate polynomial forms in the ``y`` coordinates at ``nbar``."""
    bindings = nbar.as_dict()
    return {name: substitute(parse(text), bindings) for name, text in forms.items()}


@dataclass(frozen=True)
class BruhatGL2:
    """``m = u1 . (0 1; -1 0) . diag(t1, t2) . u2`` with unipotent upper ``u1``, ``u2``."""

    u1_entry: Scalar
    u2_entry: Scalar
    t1: Scalar
    t2: Scalar

    def factors(self) -> tuple[GL2Elem, GL2Elem, GL2Elem, GL2Elem]:
        return (
            GL2Elem(1, self.u1_entry, 0, 1),
            GL2Elem(0, 1, -1, 0),
            GL2Elem(self.t1, 0, 0, self.t2),
            GL2Elem(1, self.u2_entry, 0, 1),
        )

    def product(self) -> GL2Elem:
        u1, weyl, torus, u2 = self.factors()
        return u1 @ weyl @ torus @ u2


def bruhat_gl2(m: GL2Elem) -> BruhatGL2:
    """Bruhat factorization of ``m = (a, b; c, d)`` in the big cell of GL2.

    ``u1 = a/c``, ``u2 = d/c``, ``t1 = -c``, ``t2 = -det(m)/c``.

    Raises:
        OutsideBigCellError: If ``c = 0``.
        CertificationError: If the factors do not multiply back to ``m``.
    """
    if not m.c:
        raise OutsideBigCellError(f"not in big cell of M: c = 0 in {m.rows()}")
    result = BruhatGL2(
        u1_entry=m.a / m.c,
        u2_entry=m.d / m.c,
        t1=-m.c,
        t2=-m.det() / m.c,
    )
    if result.product() != m:
        raise CertificationError("Bruhat factors do not multiply back to m")
    return result


def x_alpha_formula(point: DomainPoint) -> Scalar:
    """``(x10 x21/2 - x31) / (x21^2 + x10 x32)``; on ``D0`` the familiar ``(x21/2 - x31)/D``."""
    c = point.coords
    disc = discriminant(point)
    if not disc:
        raise DiscriminantError("discriminant vanishes: x21^2 + x10*x32 = 0")
    return (like(Fraction(1, 2), c.x21) * c.x10 * c.x21 - c.x31) / disc


def x_alpha_by_conjugation(point: DomainPoint) -> Scalar:
    """The ``X10`` coordinate of ``log(w0^-1 exp(nbar) w0)``."""
    c = point.coords
    nbar = nbar_closed_form(c.x21, c.x31, c.x32, x10=c.x10)
    conjugate = mat_mul(mat_mul(w0_inverse(), nbar_matrix(nbar)), w0())
    return lie_from_matrix(log_unipotent(conjugate)).x10


def x_alpha(point: DomainPoint) -> Scalar:
    """The argument of the generic character on the conjugated ``nbar``, computed two ways.

    Raises:
        DiscriminantError: If the discriminant vanishes.
        CertificationError: If the formula and the conjugation disagree.
    """
    formula = x_alpha_formula(point)
    conjugated = x_alpha_by_conjugation(point)
    if formula != conjugated:
        raise CertificationError(f"x_alpha mismatch: {formula} vs {conjugated}")
    return formula


def solve_nbar(point: DomainPoint) -> NbarCoords:
    """Recover ``nbar`` from ``n`` without the closed forms.

    ``T exp(-nbar)`` lies in P exactly when ``exp(-nbar) e6`` is proportional to
    ``v = T^-1 e6`` (P is the stabilizer of the line through ``e6``), where
    ``T = w0^-1 exp(n)``. In the basis ``e1, e2, e7, e5, e4`` the coordinates of
    ``exp(-nbar) e6`` are ``-y10``, ``y11``, ``-y21``, ``y31 + y10 y21/2`` and
    ``y32 + y11 y21/2``, so the unknowns come out one at a time in increasing
    root height. The ``e3`` coordinate and the full shape of P are then checked.

    Args:
        point: Point of ``D0`` or ``D``, numeric or symbolic

    Returns:
        The coordinates of ``nbar``

    Raises:
        DiscriminantError: If ``v`` has no ``e6`` component.
        InconsistentSystemError: If the residual check fails.
    """
    c = point.coords
    minus_n = NCoords(*(-value for value in c.values()))
    # T^-1 = exp(-n) w0, so v is its sixth column
    inverse = mat_mul(n_matrix(minus_n), w0())
    v = unify(*(inverse[i, 5] for i in range(7)))
    if not v[5]:
        raise DiscriminantError("discriminant vanishes: T^-1 e6 has no e6 component")
    e = [value / v[5] for value in v]
    half = like(Fraction(1, 2), e[0])

    y10 = -e[0]
    y11 = e[1]
    y21 = -e[6]
    y31 = e[4] - half * y10 * y21
    y32 = e[3] - half * y11 * y21
    nbar = NbarCoords(y10, y11, y21, y31, y32)
    log.debug("solved nbar: %s", nbar)

    residual = e[2] - (y10 * y32 - y11 * y31 + y21**2)
    if residual:
        raise InconsistentSystemError(f"e3 residual {residual} is not zero")
    target = mat_mul(w0_inverse(), n_matrix(c))
    bad = violations(mat_mul(target, nbar_matrix(-nbar)), P_PATTERN)
    if bad:
        raise InconsistentSystemError(f"solved nbar leaves nonzero entries at {bad}")
    return nbar


@dataclass(frozen=True)
class HomogeneityClaim:
    name: str
    expected: int
    computed: Optional[int]

    @property
    def passed(self) -> bool:
        return self.computed == self.expected


@dataclass(frozen=True)
class HomogeneityReport:
    """Weights under ``(x21, x31, x32) -> (t x21, t x31, t^2 x32)``.

    The scaling is conjugation of ``n`` by ``h = diag(t, 1, t^-1, t^-1, 1, t, 1)``
    (``alpha(h) = 1``, ``beta(h) = t``). It fixes ``x10`` and scales a root
    coordinate by ``t`` to its beta-coefficient, so ``nbar`` coordinates carry
    minus the beta-coefficient of their root. ``twist_consistent`` records that
    the computed y-weights agree with this.
    """

    claims: tuple[HomogeneityClaim, ...]
    twist_weights: dict[str, int]
    twist_consistent: bool

    @property
    def passed(self) -> bool:
        return self.twist_consistent and all(claim.passed for claim in self.claims)

    def weight(self, name: str) -> int:
        """Computed weight of a passed claim.

        Raises:
            KeyError: If no claim has that name.
            ValueError: If the claim failed.
        """
        for claim in self.claims:
            if claim.name == name:
                if not claim.passed:
                    raise ValueError(f"claim {name} failed: {claim.computed} != {claim.expected}")
                return claim.computed
        raise KeyError(name)


# expected weights; the t-block is listed in the printed order (-det/c, -c)
EXPECTED_WEIGHTS = {
    "y10": 0,
    "y11": -1,
    "y21": -1,
    "y31": -1,
    "y32": -2,
    "m.a": -1,
    "m.b": 0,
    "m.c": -2,
    "m.d": -1,
    "t_block.-det/c": 0,
    "t_block.-c": -2,
    "u1": 1,
    "u2": 1,
    "det_m": -2,
    "x_alpha": -1,
}


def homogeneity_certificate() -> HomogeneityReport:
    """Compute (never assume) the weight of every big-cell quantity on ``D0``."""
    decomposition = symbolic_decomposition()
    m = decomposition.m
    bruhat = bruhat_gl2(m)
    quantities: dict[str, Scalar] = dict(decomposition.nbar.as_dict())
    quantities.update({"m.a": m.a, "m.b": m.b, "m.c": m.c, "m.d": m.d})
    quantities["t_block.-det/c"] = bruhat.t2
    quantities["t_block.-c"] = bruhat.t1
    quantities["u1"] = bruhat.u1_entry
    quantities["u2"] = bruhat.u2_entry
    quantities["det_m"] = m.det()
    quantities["x_alpha"] = x_alpha(DomainPoint.symbolic())

    claims = tuple(
        HomogeneityClaim(name, EXPECTED_WEIGHTS[name], weighted_degree(value, SCALING_GRADING))
        for name, value in quantities.items()
    )
    # keys are the negative roots, so this is minus the beta-coefficient of the positive root
    twist = {
        name: root.coeff_beta
        for root, name in NEGATIVE_ROOT_COORDINATE.items()
        if name in NBAR_COORDINATES
    }
    computed = {claim.name: claim.computed for claim in claims}
    consistent = all(computed[name] == weight for name, weight in twist.items())
    report = HomogeneityReport(claims=claims, twist_weights=twist, twist_consistent=consistent)
    log.info("homogeneity certificate passed=%s", report.passed)
    return report

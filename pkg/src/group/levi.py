"""
Levi factor M = GL2, the parabolic P = MN and the orbit structure of N under M.

``M`` sits block-diagonally as ``(A, det A^-1, tA^-1, det A, 1)``. Its unipotent
part ``U_M`` (the root group of beta) and its centre ``Z_M`` (scalars ``t I_2``)
act on ``N`` by conjugation; on the open set ``N'`` where ``x10 != 0`` these
actions are simple and the slices ``D = {x11 = 0}`` and ``D0 = {x10 = 1, x11 = 0}``
are fundamental domains. The Jacobians of the two parametrizations give the
orbit-space densities.
"""

import logging
from dataclasses import dataclass, fields
from enum import Enum
from typing import Optional, Sequence, Union

from sympy.polys.matrices import DomainMatrix

from src.group.realization import LieCoords, NotInRealizationError, lie_from_matrix, lie_to_matrix
from src.matrix.mat7 import (
    Mat7,
    NotNilpotentError,
    ZeroPattern,
    exp_nilpotent,
    log_unipotent,
    mat_inv,
    mat_mul,
)
from src.ring.kernel import FIELD, FIELD_DOMAIN, RatFn, Scalar, as_ratfn, derivative, sym, unify

log = logging.getLogger(__name__)


class SingularLeviError(ValueError):
    """Raised when a 2x2 block has zero determinant."""


class OutsideOpenSetError(ValueError):
    """Raised when a point of N has x10 = 0."""


class PatternError(ValueError):
    """Raised when a conjugate leaves the coordinate pattern of N."""


@dataclass(frozen=True)
class GL2Elem:
    """Invertible 2x2 matrix ``(a, b; c, d)``."""

    a: Scalar
    b: Scalar
    c: Scalar
    d: Scalar

    def __post_init__(self):
        for name, value in zip("abcd", unify(self.a, self.b, self.c, self.d)):
            object.__setattr__(self, name, value)
        if not self.det():
            raise SingularLeviError(f"GL2 element must be invertible, got {self.rows()}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Scalar]]) -> "GL2Elem":
        (a, b), (c, d) = rows
        return cls(a, b, c, d)

    @classmethod
    def scalar(cls, t: Scalar) -> "GL2Elem":
        return cls(t, 0, 0, t)

    @classmethod
    def identity(cls) -> "GL2Elem":
        return cls(1, 0, 0, 1)

    def det(self) -> Scalar:
        return self.a * self.d - self.b * self.c

    def inverse(self) -> "GL2Elem":
        det = self.det()
        return GL2Elem(self.d / det, -self.b / det, -self.c / det, self.a / det)

    def __matmul__(self, other: "GL2Elem") -> "GL2Elem":
        return GL2Elem(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def rows(self) -> list[list[Scalar]]:
        return [[self.a, self.b], [self.c, self.d]]


def embed_M(A: Union[GL2Elem, Sequence[Sequence[Scalar]]]) -> Mat7:
    """Block embedding of GL2 as the Levi factor of P.

    Args:
        A: 2x2 invertible matrix, as a ``GL2Elem`` or a pair of rows

    Returns:
        ``diag(A, det A^-1, tA^-1, det A, 1)`` as a 7x7 matrix

    Raises:
        SingularLeviError: If ``det A = 0``.

    Example:
        >>> embed_M(GL2Elem.scalar(2))[2, 2]
        Fraction(1, 4)
    """
    if not isinstance(A, GL2Elem):
        A = GL2Elem.from_rows(A)
    det = A.det()
    entries = {
        (0, 0): A.a,
        (0, 1): A.b,
        (1, 0): A.c,
        (1, 1): A.d,
        (2, 2): 1 / det,
        # transpose inverse
        (3, 3): A.d / det,
        (3, 4): -A.c / det,
        (4, 3): -A.b / det,
        (4, 4): A.a / det,
        (5, 5): det,
        (6, 6): 1,
    }
    return Mat7.from_entries(entries)


@dataclass(frozen=True)
class NCoords:
    """Coordinates of ``exp(x10 X10 + x11 X11 + x21 X21 + x31 X31 + x32 X32)`` in N."""

    x10: Scalar = 0
    x11: Scalar = 0
    x21: Scalar = 0
    x31: Scalar = 0
    x32: Scalar = 0

    def __post_init__(self):
        values = unify(*(getattr(self, name) for name in N_COORDINATES))
        for name, value in zip(N_COORDINATES, values):
            object.__setattr__(self, name, value)

    def values(self) -> tuple[Scalar, ...]:
        return tuple(getattr(self, name) for name in N_COORDINATES)

    def as_dict(self) -> dict[str, Scalar]:
        return dict(zip(N_COORDINATES, self.values()))

    def to_lie(self) -> LieCoords:
        return LieCoords(**self.as_dict())


N_COORDINATES = tuple(f.name for f in fields(NCoords))

_OUTSIDE_N = ("a", "b", "x01", "y01", "y10", "y11", "y21", "y31", "y32")


def n_matrix(n: NCoords) -> Mat7:
    return exp_nilpotent(lie_to_matrix(n.to_lie()))


def n_from_matrix(matrix: Mat7) -> NCoords:
    """Coordinates of a matrix in N.

    Raises:
        PatternError: If the matrix is not the exponential of an element of Lie(N).
    """
    try:
        coords = lie_from_matrix(log_unipotent(matrix))
    except (NotNilpotentError, NotInRealizationError) as exc:
        raise PatternError(f"matrix is not unipotent in the realization: {exc}") from exc
    stray = [name for name in _OUTSIDE_N if getattr(coords, name)]
    if stray:
        raise PatternError(f"conjugate left the N pattern, nonzero coordinates {stray}")
    return NCoords(**{name: getattr(coords, name) for name in N_COORDINATES})


def u_matrix(x: Scalar) -> Mat7:
    """``exp(x X01)``, the unipotent radical of the Borel of M."""
    return exp_nilpotent(lie_to_matrix(LieCoords(x01=x)))


def conj_UM(x: Scalar, n: NCoords) -> NCoords:
    """Conjugate ``exp(n)`` by ``exp(x X01)`` and read the result back in N.

    Closed form: ``(x10, x*x10 + x11, x21, x31, x*x31 + x32)``.

    Raises:
        PatternError: If the conjugate is not in N.
    """
    u = u_matrix(x)
    return n_from_matrix(mat_mul(mat_mul(u, n_matrix(n)), mat_inv(u)))


def conj_ZM(t: Scalar, n: NCoords) -> NCoords:
    """Conjugate ``exp(n)`` by the central element ``z = embed_M(t I_2)``.

    Closed form: ``(t x10, t x11, t^2 x21, t^3 x31, t^3 x32)``.

    Raises:
        ValueError: If ``t = 0``.
        PatternError: If the conjugate is not in N.
    """
    if not t:
        raise ValueError(f"t must be nonzero, got {t}")
    scalar = GL2Elem.scalar(t)
    z, z_inv = embed_M(scalar), embed_M(scalar.inverse())
    return n_from_matrix(mat_mul(mat_mul(z, n_matrix(n)), z_inv))


def conj_UM_closed_form(x: Scalar, n: NCoords) -> NCoords:
    x = unify(x, *n.values())[0]
    return NCoords(n.x10, x * n.x10 + n.x11, n.x21, n.x31, x * n.x31 + n.x32)


def conj_ZM_closed_form(t: Scalar, n: NCoords) -> NCoords:
    t = unify(t, *n.values())[0]
    return NCoords(t * n.x10, t * n.x11, t**2 * n.x21, t**3 * n.x31, t**3 * n.x32)


class DomainKind(str, Enum):
    D = "D"
    D0 = "D0"


@dataclass(frozen=True)
class DomainPoint:
    """A point of a fundamental domain: ``x11 = 0``, and ``x10 = 1`` on ``D0``."""

    kind: DomainKind
    coords: NCoords

    def __post_init__(self):
        object.__setattr__(self, "kind", DomainKind(self.kind))
        if self.coords.x11:
            raise ValueError(f"x11 must be 0 on {self.kind.value}, got {self.coords.x11}")
        if not self.coords.x10:
            raise OutsideOpenSetError("outside N': x10 = 0")
        if self.kind is DomainKind.D0 and as_ratfn(self.coords.x10) != FIELD.one:
            raise ValueError(f"x10 must be 1 on D0, got {self.coords.x10}")

    @classmethod
    def d0(cls, x21: Scalar, x31: Scalar, x32: Scalar) -> "DomainPoint":
        return cls(DomainKind.D0, NCoords(1, 0, x21, x31, x32))

    @classmethod
    def symbolic(cls, kind: DomainKind = DomainKind.D0) -> "DomainPoint":
        """Generic point with free coordinates ``x21, x31, x32`` (and ``x10`` on D)."""
        x10 = sym("x10") if DomainKind(kind) is DomainKind.D else 1
        return cls(kind, NCoords(x10, 0, sym("x21"), sym("x31"), sym("x32")))


@dataclass(frozen=True)
class CanonicalRep:
    rep: DomainPoint
    u: Scalar
    t: Optional[Scalar] = None


def canonical_rep(n: NCoords, target: DomainKind) -> CanonicalRep:
    """Reduce ``n`` in ``N'`` to its representative in ``D`` or ``D0``.

    ``u = -x11/x10`` clears ``x11``; on ``D0`` the scalar ``t = 1/x10`` then
    normalizes ``x10``. Both are unique.

    Args:
        n: Point of N
        target: ``DomainKind.D`` or ``DomainKind.D0``

    Returns:
        The representative with the reducing ``u`` (and ``t`` for ``D0``)

    Raises:
        OutsideOpenSetError: If ``x10 = 0``.
    """
    target = DomainKind(target)
    if not n.x10:
        raise OutsideOpenSetError("outside N': x10 = 0")
    u = -n.x11 / n.x10
    reduced = conj_UM(u, n)
    if target is DomainKind.D:
        return CanonicalRep(DomainPoint(DomainKind.D, reduced), u)
    t = 1 / n.x10
    return CanonicalRep(DomainPoint(DomainKind.D0, conj_ZM(t, reduced)), u, t)


@dataclass(frozen=True)
class JacobianCertificate:
    target: DomainKind
    variables: tuple[str, ...]
    jacobian: RatFn
    expected: RatFn
    passed: bool
    note: str


_JACOBIAN_VARIABLES = {
    DomainKind.D: ("x", "x10", "x21", "x31", "x32"),
    DomainKind.D0: ("t", "x", "x21", "x31", "x32"),
}

_JACOBIAN_NOTES = {
    DomainKind.D: (
        "(x, x10, x21, x31, x32) -> u n0 u^-1 has Jacobian +-x10: the measure on N' "
        "is |x10| dx10 dx21 dx31 dx32 times the measure on U_M"
    ),
    DomainKind.D0: (
        "(t, x, x21, x31, x32) -> z u n0 u^-1 z^-1 has Jacobian +-t^9 = t^10 / t: "
        "against the multiplicative Haar measure dt/|t| on Z_M the density is "
        "|t|^10 = q^<2rho, H_M(z)>"
    ),
}


def _parametrization(target: DomainKind) -> NCoords:
    base = DomainPoint.symbolic(target).coords
    image = conj_UM(sym("x"), base)
    if target is DomainKind.D0:
        image = conj_ZM(sym("t"), image)
    return image


def jacobian_certificate(
    target: DomainKind, order: Optional[Sequence[str]] = None
) -> JacobianCertificate:
    """Jacobian determinant of the orbit parametrization of N'.

    Args:
        target: ``D`` for ``(x, x10, x21, x31, x32)`` or ``D0`` for ``(t, x, x21, x31, x32)``
        order: Optional permutation of the variables; changes the sign only

    Returns:
        Certificate comparing the determinant with ``x10`` or ``t^9`` up to sign

    Raises:
        ValueError: If ``order`` is not a permutation of the variables.
    """
    target = DomainKind(target)
    variables = _JACOBIAN_VARIABLES[target]
    if order is not None:
        if sorted(order) != sorted(variables):
            raise ValueError(f"order must permute {variables}, got {tuple(order)}")
        variables = tuple(order)
    image = _parametrization(target).values()
    rows = [[derivative(component, name) for name in variables] for component in image]
    jacobian = DomainMatrix(rows, (5, 5), FIELD_DOMAIN).det()
    expected = sym("x10") if target is DomainKind.D else sym("t") ** 9
    passed = jacobian in (expected, -expected)
    log.debug("jacobian for %s: %s (passed=%s)", target.value, jacobian, passed)
    return JacobianCertificate(
        target=target,
        variables=variables,
        jacobian=jacobian,
        expected=expected,
        passed=passed,
        note=_JACOBIAN_NOTES[target],
    )


# Shape of P = MN. (2,5) is free: row 2 of embed_M(A) n picks up c times row 1 of n
P_PATTERN = ZeroPattern.parse(
    [
        "* * * * * 0 *",
        "* * * * * 0 *",
        "0 0 * 0 0 0 0",
        "0 0 * * * 0 0",
        "0 0 * * * 0 0",
        "* * * * * * *",
        "0 0 * * * 0 1",
    ]
)

# Printed shape with (2,5) forced to zero; kept for the findings report
REFERENCE_P_PATTERN = ZeroPattern.parse(
    [
        "* * * * * 0 *",
        "* * * * 0 0 *",
        "0 0 * 0 0 0 0",
        "0 0 * * * 0 0",
        "0 0 * * * 0 0",
        "* * * * * * *",
        "0 0 * * * 0 1",
    ]
)


def parabolic_element(A: GL2Elem, n: NCoords) -> Mat7:
    return mat_mul(embed_M(A), n_matrix(n))

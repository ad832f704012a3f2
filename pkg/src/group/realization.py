"""
Seven-dimensional realization of the split G2 Lie algebra and group.

The Lie algebra is the 14-dimensional space of matrices

    H(a, b) + sum x_ij X_ij + sum y_ij Y_ij

with Cartan part ``H(a, b) = diag(a, b, -a-b, -a, -b, a+b, 0)``. The positive
root vectors ``X_ij`` span the upper part, ``Y_ij`` the opposite part, and
``ij`` records the root ``i*alpha + j*beta``. Group elements used here are
exponentials of nilpotent elements and products of the Weyl representatives.

References:
    - Chevalley, C. "Sur certains groupes simples" (root subgroup parametrization)
    - Springer, T.A. "Linear Algebraic Groups", ch. 8-9 (canonical Weyl representatives)
"""

import logging
from dataclasses import dataclass, fields
from fractions import Fraction
from functools import cache
from typing import Optional

from sympy import Poly, Symbol
from sympy.polys.fields import FracElement

from src.group.roots import (
    ALPHA_CHAR,
    BETA_CHAR,
    LONG_WORD,
    N_ROOTS,
    SIMPLE_ROOTS,
    CharLattice,
    Root,
    Simple,
    WeylWord,
    act,
    bilinear_form,
    coroot_pairing,
    reduced_word,
    require_reduced,
    weyl_group,
    word_label,
)
from src.matrix.mat7 import (
    SIZE,
    Mat7,
    NotNilpotentError,
    commutator,
    diag,
    exp_nilpotent,
    identity,
    log_unipotent,
    mat_inv,
    mat_mul,
)
from src.ring.kernel import FIELD_DOMAIN, Scalar, as_ratfn, substitute, sym, to_rat, unify

log = logging.getLogger(__name__)


class NotInRealizationError(ValueError):
    """Raised when a matrix is not in the image of the Lie algebra realization."""


class NotPositiveRootError(ValueError):
    """Raised when a positive root is required."""


class NotUnipotentError(ValueError):
    """Raised when a matrix is not in the upper unipotent subgroup U."""


class CertificationError(RuntimeError):
    """Raised when two independent computations of the same quantity disagree."""


@dataclass(frozen=True)
class LieCoords:
    """Coordinates of a Lie algebra element; unset coordinates are zero."""

    a: Scalar = 0
    b: Scalar = 0
    x01: Scalar = 0
    x10: Scalar = 0
    x11: Scalar = 0
    x21: Scalar = 0
    x31: Scalar = 0
    x32: Scalar = 0
    y01: Scalar = 0
    y10: Scalar = 0
    y11: Scalar = 0
    y21: Scalar = 0
    y31: Scalar = 0
    y32: Scalar = 0

    def values(self) -> tuple[Scalar, ...]:
        return tuple(getattr(self, name) for name in COORDINATE_NAMES)

    def as_dict(self) -> dict[str, Scalar]:
        return dict(zip(COORDINATE_NAMES, self.values()))


COORDINATE_NAMES = tuple(f.name for f in fields(LieCoords))

# 1-based (row, col, coefficient) placements of each root coordinate
_PLACEMENTS: dict[str, tuple[tuple[int, int, int], ...]] = {
    "x01": ((1, 2, 1), (5, 4, -1)),
    "x10": ((2, 7, 2), (4, 3, -1), (6, 1, 1), (7, 5, 1)),
    "x11": ((1, 7, 2), (5, 3, 1), (6, 2, -1), (7, 4, 1)),
    "x21": ((1, 5, -1), (2, 4, 1), (6, 7, 2), (7, 3, 1)),
    "x31": ((2, 3, 1), (6, 5, -1)),
    "x32": ((1, 3, 1), (6, 4, -1)),
    "y01": ((2, 1, 1), (4, 5, -1)),
    "y10": ((1, 6, 1), (3, 4, -1), (5, 7, 2), (7, 2, 1)),
    "y11": ((2, 6, -1), (3, 5, 1), (4, 7, 2), (7, 1, 1)),
    "y21": ((3, 7, 2), (4, 2, 1), (5, 1, -1), (7, 6, 1)),
    "y31": ((3, 2, 1), (5, 6, -1)),
    "y32": ((3, 1, 1), (4, 6, -1)),
    "a": ((1, 1, 1), (3, 3, -1), (4, 4, -1), (6, 6, 1)),
    "b": ((2, 2, 1), (3, 3, -1), (5, 5, -1), (6, 6, 1)),
}

# 1-based position from which each coordinate is read back (coefficient +1 there)
_READ_AT = {
    "a": (1, 1),
    "b": (2, 2),
    "x01": (1, 2),
    "x10": (6, 1),
    "x11": (7, 4),
    "x21": (2, 4),
    "x31": (2, 3),
    "x32": (1, 3),
    "y01": (2, 1),
    "y10": (1, 6),
    "y11": (3, 5),
    "y21": (4, 2),
    "y31": (3, 2),
    "y32": (3, 1),
}

ROOT_COORDINATE: dict[Root, str] = {
    Root(1, 0): "x10",
    Root(0, 1): "x01",
    Root(1, 1): "x11",
    Root(2, 1): "x21",
    Root(3, 1): "x31",
    Root(3, 2): "x32",
}
NEGATIVE_ROOT_COORDINATE: dict[Root, str] = {
    -root: "y" + name[1:] for root, name in ROOT_COORDINATE.items()
}

# Scale of the negative simple root vectors exp(scale * u * Y); frozen regression values
NEGATIVE_ROOT_SCALE = {Simple.ALPHA: Fraction(-1), Simple.BETA: Fraction(-1)}

# Expected Weyl representatives as 1-based {(row, col): value}
EXPECTED_REPRESENTATIVES: dict[str, dict[tuple[int, int], int]] = {
    "w_alpha": {(1, 6): -1, (2, 5): 1, (3, 4): 1, (4, 3): -1, (5, 2): 1, (6, 1): 1, (7, 7): -1},
    "w_beta": {(1, 2): 1, (2, 1): -1, (3, 3): 1, (4, 5): 1, (5, 4): -1, (6, 6): 1, (7, 7): 1},
    "w_long": {(1, 4): 1, (2, 5): 1, (3, 6): 1, (4, 1): 1, (5, 2): 1, (6, 3): 1, (7, 7): -1},
    "w_0": {(1, 5): -1, (2, 4): 1, (3, 6): 1, (4, 2): -1, (5, 1): 1, (6, 3): 1, (7, 7): -1},
}


def lie_to_matrix(coords: LieCoords) -> Mat7:
    """Matrix of a Lie algebra element.

    Args:
        coords: The 14 coordinates

    Returns:
        The 7x7 matrix, including the factor-2 entries of the last row and column

    Example:
        >>> lie_to_matrix(LieCoords(x32=1))[0, 2]
        Fraction(1, 1)
    """
    values = unify(*coords.values())
    entries: dict[tuple[int, int], Scalar] = {}
    for name, value in zip(COORDINATE_NAMES, values):
        if not value:
            continue
        for row, col, coefficient in _PLACEMENTS[name]:
            key = (row - 1, col - 1)
            entries[key] = entries.get(key, 0) + coefficient * value
    return Mat7.from_entries(entries, FIELD_DOMAIN if isinstance(values[0], FracElement) else None)


def lie_from_matrix(matrix: Mat7) -> LieCoords:
    """Coordinates of a matrix in the realization.

    Raises:
        NotInRealizationError: If the matrix is not of the realized shape.
    """
    coords = LieCoords(**{name: matrix[r - 1, c - 1] for name, (r, c) in _READ_AT.items()})
    if lie_to_matrix(coords) != matrix:
        raise NotInRealizationError("matrix is not in the image of the Lie algebra realization")
    return coords


@cache
def basis() -> dict[str, Mat7]:
    """The 14 basis matrices, keyed by coordinate name."""
    return {name: lie_to_matrix(LieCoords(**{name: 1})) for name in COORDINATE_NAMES}


def bracket_table() -> dict[tuple[str, str], LieCoords]:
    """All 91 brackets of distinct basis elements, expressed in coordinates."""
    elements = basis()
    table = {}
    for i, first in enumerate(COORDINATE_NAMES):
        for second in COORDINATE_NAMES[i + 1 :]:
            table[(first, second)] = lie_from_matrix(commutator(elements[first], elements[second]))
    return table


def root_vector(root: Root, t: Scalar) -> Mat7:
    """One-parameter subgroup ``x_root(t) = exp(t X_root)`` of a positive root.

    Raises:
        NotPositiveRootError: For negative roots.
    """
    if not root.is_positive:
        raise NotPositiveRootError(f"root_vector needs a positive root, got {root.label()}")
    return exp_nilpotent(lie_to_matrix(LieCoords(**{ROOT_COORDINATE[root]: t})))


def negative_root_vector(root: Root, u: Scalar) -> Mat7:
    """``x_{-root}(u)`` for a simple root, normalized so ``w_root`` is in the torus normalizer."""
    letter = simple_letter(root)
    name = NEGATIVE_ROOT_COORDINATE[-root]
    scale = NEGATIVE_ROOT_SCALE[letter]
    value = as_ratfn(u) * as_ratfn(scale) if isinstance(u, FracElement) else Fraction(u) * scale
    return exp_nilpotent(lie_to_matrix(LieCoords(**{name: value})))


def is_monomial(matrix: Mat7) -> bool:
    """Exactly one nonzero entry in each row and column."""
    for i in range(SIZE):
        if sum(1 for j in range(SIZE) if matrix.raw(i, j)) != 1:
            return False
        if sum(1 for j in range(SIZE) if matrix.raw(j, i)) != 1:
            return False
    return True


@cache
def solve_negative_root_scale(letter: Simple) -> Fraction:
    """Find ``lam`` with ``x_g(1) exp(lam Y_g) x_g(1)`` normalizing the diagonal torus.

    The candidate values are the rational roots of the entries of the product
    seen as polynomials in ``lam``; exactly one candidate must give a monomial
    matrix.

    Raises:
        CertificationError: If no candidate or several candidates work.
    """
    root = SIMPLE_ROOTS[letter]
    lam = sym("x")
    positive = root_vector(root, 1)
    negative = exp_nilpotent(lie_to_matrix(LieCoords(**{NEGATIVE_ROOT_COORDINATE[-root]: lam})))
    product = mat_mul(mat_mul(positive, negative), positive)

    candidates: set[Fraction] = set()
    variable = Symbol("x")
    for i in range(SIZE):
        for j in range(SIZE):
            entry = product[i, j]
            if entry.numer.is_ground:
                continue
            for value in Poly(entry.as_expr(), variable).ground_roots():
                candidates.add(Fraction(int(value.p), int(value.q)))

    solutions = []
    for value in sorted(candidates):
        specialized = Mat7(
            [[substitute(product[i, j], {"x": value}) for j in range(SIZE)] for i in range(SIZE)]
        )
        if is_monomial(specialized):
            solutions.append(value)
    log.debug("scale for %s: candidates %s, solutions %s", letter, candidates, solutions)
    if len(solutions) != 1:
        raise CertificationError(f"expected one normalizing scale for {letter}, found {solutions}")
    return solutions[0]


@cache
def simple_rep(letter: Simple) -> Mat7:
    """``w_g = x_g(1) x_{-g}(1) x_g(1)``."""
    root = SIMPLE_ROOTS[letter]
    positive = root_vector(root, 1)
    return mat_mul(mat_mul(positive, negative_root_vector(root, 1)), positive)


def weyl_rep(word: WeylWord) -> Mat7:
    """Canonical representative of the Weyl element spelled by a reduced word.

    Raises:
        NotReducedError: If the word is not reduced.
    """
    require_reduced(word)
    result = identity()
    for letter in word:
        result = mat_mul(result, simple_rep(letter))
    return result


@cache
def w0() -> Mat7:
    return mat_mul(weyl_rep(LONG_WORD), mat_inv(simple_rep(Simple.BETA)))


@cache
def w0_inverse() -> Mat7:
    return mat_inv(w0())


def expected_representative(name: str) -> Mat7:
    return Mat7.from_entries(
        {(r - 1, c - 1): v for (r, c), v in EXPECTED_REPRESENTATIVES[name].items()}
    )


def cartan(a: Scalar, b: Scalar) -> Mat7:
    return lie_to_matrix(LieCoords(a=a, b=b))


def torus_element(h1: Scalar, h2: Scalar) -> Mat7:
    """``diag(h1, h2, (h1 h2)^-1, h1^-1, h2^-1, h1 h2, 1)``."""
    h1, h2 = unify(h1, h2)
    return diag([h1, h2, 1 / (h1 * h2), 1 / h1, 1 / h2, h1 * h2, 1])


def root_character_value(root: Root, h1: Scalar, h2: Scalar) -> Scalar:
    """Value of a root on ``torus_element(h1, h2)``: ``alpha = h2`` and ``beta = h1 / h2``."""
    h1, h2 = unify(h1, h2)
    return h2**root.coeff_alpha * (h1 / h2) ** root.coeff_beta


def _character_on_cartan(chi: CharLattice, matrix: Mat7) -> Scalar:
    # alpha(H) is entry (2,2), beta(H) is entry (1,1) - entry (2,2)
    a_part, b_part = matrix[0, 0], matrix[1, 1]
    return chi.alpha * b_part + chi.beta * (a_part - b_part)


def weyl_action_by_conjugation(word: WeylWord, chi: CharLattice) -> CharLattice:
    """``(w chi)(H) = chi(w^-1 H w)``, read back in the basis (alpha, beta)."""
    rep = weyl_rep(word)
    rep_inv = mat_inv(rep)

    def evaluate(a: int, b: int) -> Fraction:
        return Fraction(_character_on_cartan(chi, mat_mul(mat_mul(rep_inv, cartan(a, b)), rep)))

    # alpha(H(a,b)) = b and beta(H(a,b)) = a - b, so H(1,1) separates the alpha coefficient
    coeff_alpha = evaluate(1, 1)
    coeff_beta = evaluate(1, 0)
    return CharLattice(coeff_alpha, coeff_beta)


def weyl_action(word: WeylWord, chi: CharLattice) -> CharLattice:
    """Action of a Weyl element on a character, computed two ways.

    Any word is accepted; it is reduced before the matrix representative is built.

    Raises:
        CertificationError: If reflection formulas and matrix conjugation disagree.
    """
    abstract = act(word, chi)
    concrete = weyl_action_by_conjugation(reduced_word(word), chi)
    if abstract != concrete:
        raise CertificationError(
            f"Weyl action mismatch on {chi.label()}: {abstract.label()} vs {concrete.label()}"
        )
    return abstract


@dataclass(frozen=True)
class CharacterConstants:
    """Character-lattice constants attached to the Levi embedding.

    ``det_character`` is the determinant of the Levi factor as a character
    (``2 alpha + beta``); exponents are multiples of it.
    """

    two_rho: CharLattice
    tilde_alpha: CharLattice
    tilde_alpha_factor: Fraction
    hm_det_exponent: Fraction
    z_exponent: Fraction
    det_character: CharLattice
    rho_det_exponent: Fraction
    form_rho_pairing: Fraction
    form_tilde_alpha_pairing: Fraction
    claimed_tilde_alpha_pairing: Fraction
    consistent: bool


def det_exponent(chi: CharLattice, det_character: CharLattice) -> Optional[Fraction]:
    """``k`` with ``chi = k * det_character``, or ``None`` if ``chi`` is not a multiple."""
    k = chi.alpha / det_character.alpha
    return k if det_character * k == chi else None


# printed chain: tilde_alpha = 4 rho, so q^<s tilde_alpha, H_M(m)> = |det m|^(10 s)
TILDE_ALPHA_FACTOR = Fraction(4)
PRINTED_HM_DET_EXPONENT = Fraction(10)


def tilde_alpha_consistent(
    tilde_alpha: CharLattice, two_rho: CharLattice, det_character: CharLattice
) -> bool:
    """Check the distinguished character against rho through the determinant.

    ``tilde_alpha`` must be ``4 rho`` as a lattice vector, a multiple of the
    determinant character, and its det exponent must be twice that of ``2 rho``
    and equal to the printed 10.
    """
    exponent = det_exponent(tilde_alpha, det_character)
    rho_exponent = det_exponent(two_rho, det_character)
    if exponent is None or rho_exponent is None:
        return False
    return (
        tilde_alpha == two_rho * (TILDE_ALPHA_FACTOR / 2)
        and exponent == 2 * rho_exponent
        and exponent == PRINTED_HM_DET_EXPONENT
    )


def character_from_torus_exponents(e1: int, e2: int) -> CharLattice:
    """Character ``h1^e1 h2^e2`` of ``torus_element(h1, h2)`` in the basis (alpha, beta).

    ``alpha`` takes ``h2`` and ``beta`` takes ``h1 / h2``, so ``p alpha + q beta`` has
    exponents ``(q, p - q)``.
    """
    return CharLattice(e1 + e2, e1)


def character_constants() -> CharacterConstants:
    """2 rho, the factor relating the distinguished character to rho, and the det exponents."""
    two_rho = CharLattice(0, 0)
    for root in N_ROOTS:
        two_rho = two_rho + root.character

    # det(A) for A = diag(h1, h2) is h1 h2
    det_character = character_from_torus_exponents(1, 1)
    if bilinear_form(det_character, BETA_CHAR) != 0:
        raise CertificationError("determinant character is not orthogonal to beta")
    two_rho_det = det_exponent(two_rho, det_character)
    if two_rho_det is None:
        raise CertificationError("2 rho is not a multiple of the determinant character")
    rho_det = two_rho_det / 2
    tilde_alpha = (two_rho * Fraction(1, 2)) * TILDE_ALPHA_FACTOR
    hm_det_exponent = det_exponent(tilde_alpha, det_character)
    if hm_det_exponent is None:
        raise CertificationError("tilde alpha is not a multiple of the determinant character")
    # det(t I_2) = t^2
    z_exponent = 2 * two_rho_det

    form_rho_pairing = coroot_pairing(two_rho * Fraction(1, 2), ALPHA_CHAR)
    return CharacterConstants(
        two_rho=two_rho,
        tilde_alpha=tilde_alpha,
        tilde_alpha_factor=TILDE_ALPHA_FACTOR,
        hm_det_exponent=hm_det_exponent,
        z_exponent=z_exponent,
        det_character=det_character,
        rho_det_exponent=rho_det,
        form_rho_pairing=form_rho_pairing,
        form_tilde_alpha_pairing=coroot_pairing(tilde_alpha, ALPHA_CHAR),
        claimed_tilde_alpha_pairing=Fraction(20),
        consistent=tilde_alpha_consistent(tilde_alpha, two_rho, det_character),
    )


def is_upper_unipotent(matrix: Mat7) -> bool:
    try:
        coords = lie_from_matrix(log_unipotent(matrix))
    except (NotNilpotentError, NotInRealizationError):
        return False
    lower = ("a", "b", "y01", "y10", "y11", "y21", "y31", "y32")
    return not any(getattr(coords, name) for name in lower)


def generic_character_functional(u: Mat7) -> Scalar:
    """Formal argument ``x01 + x10`` of the generic character on ``u`` in U.

    Raises:
        NotUnipotentError: If ``u`` is not in the upper unipotent subgroup.
    """
    if not is_upper_unipotent(u):
        raise NotUnipotentError("element is not in the unipotent subgroup U")
    coords = lie_from_matrix(log_unipotent(u))
    return coords.x01 + coords.x10


def simple_letter(root: Root) -> Simple:
    for letter, simple in SIMPLE_ROOTS.items():
        if simple == root:
            return letter
    raise NotPositiveRootError(f"{root.label()} is not simple")


def weyl_representative_table() -> list[dict]:
    """One row per Weyl element: reduced words, representative, determinant."""
    rows = []
    for key, words in weyl_group().items():
        reps = [weyl_rep(word) for word in words]
        rows.append(
            {
                "words": [word_label(w) for w in words],
                "length": len(words[0]),
                "image_alpha": key[0].label(),
                "image_beta": key[1].label(),
                "representative": reps[0].to_json(),
                "well_defined": all(rep == reps[0] for rep in reps),
                "det": str(to_rat(reps[0].det())),
            }
        )
    rows.sort(key=lambda row: (row["length"], row["words"][0]))
    return rows


"""
Mat7 class and 7x7 matrix algebra over exact domains.

Entries of one matrix live in one sympy domain: ``QQ`` for numeric work or the
global rational function field for symbolic work. Numeric matrices lift to the
field when mixed with symbolic ones. Exponentials and logarithms are finite sums
whose nilpotency precondition is checked, never assumed.
"""

import json
import logging
from enum import Enum
from fractions import Fraction
from math import factorial
from typing import Iterable, Optional, Sequence

from sympy.polys.domains import QQ
from sympy.polys.fields import FracElement
from sympy.polys.matrices import DomainMatrix

from src.ring.kernel import FIELD_DOMAIN, Scalar, as_ratfn, to_infix, to_rat

log = logging.getLogger(__name__)

SIZE = 7


class RingMismatchError(TypeError):
    """Raised when two matrices have entries in incompatible rings."""


class SingularMatrixError(ZeroDivisionError):
    """Raised when inverting a matrix whose determinant is not a unit."""


class NotNilpotentError(ValueError):
    """Raised when a matrix expected to be nilpotent has a nonzero 7th power."""


def _infer_domain(values: Iterable[Scalar]):
    return FIELD_DOMAIN if any(isinstance(v, FracElement) for v in values) else QQ


def _convert(value, domain):
    if domain == QQ:
        if isinstance(value, FracElement):
            value = to_rat(value)
        if isinstance(value, Fraction):
            return QQ(value.numerator, value.denominator)
        if isinstance(value, int) or QQ.of_type(value):
            return QQ.convert(value)
        raise TypeError(f"cannot place {type(value).__name__} in QQ")
    if domain == FIELD_DOMAIN:
        return as_ratfn(value)
    return domain.convert(value)


def _common_domain(left, right):
    if left == right:
        return left
    if {left, right} == {QQ, FIELD_DOMAIN}:
        return FIELD_DOMAIN
    raise RingMismatchError(f"entries over {left} and {right} cannot be combined")


class Mat7:
    """
    Immutable 7x7 matrix.

    Attributes:
        domain: sympy domain of the entries (``QQ`` or the rational function field)
    """

    __slots__ = ("_rows", "domain")

    def __init__(self, rows: Sequence[Sequence[Scalar]], domain=None):
        """
        Build a matrix from row-major values.

        Args:
            rows: 7 rows of 7 ints, Fractions or rational functions
            domain: Optional explicit sympy domain; inferred when omitted
        """
        if len(rows) != SIZE or any(len(row) != SIZE for row in rows):
            raise ValueError(f"Mat7 needs 7 rows of 7 entries, got shape {len(rows)}")
        if domain is None:
            domain = _infer_domain(v for row in rows for v in row)
        self.domain = domain
        self._rows = tuple(tuple(_convert(v, domain) for v in row) for row in rows)

    @classmethod
    def _raw(cls, rows, domain) -> "Mat7":
        matrix = object.__new__(cls)
        matrix._rows = tuple(tuple(row) for row in rows)
        matrix.domain = domain
        return matrix

    @classmethod
    def from_entries(cls, entries: dict[tuple[int, int], Scalar], domain=None) -> "Mat7":
        """Sparse constructor with 0-based ``(row, col)`` keys."""
        rows = [[0] * SIZE for _ in range(SIZE)]
        for (i, j), value in entries.items():
            rows[i][j] = value
        return cls(rows, domain)

    def __getitem__(self, key: tuple[int, int]) -> Scalar:
        """Entry at 0-based ``(row, col)`` as a Fraction (QQ) or rational function."""
        i, j = key
        value = self._rows[i][j]
        if self.domain == QQ:
            return to_rat(value)
        return value

    def raw(self, i: int, j: int):
        return self._rows[i][j]

    @property
    def rows(self) -> tuple[tuple, ...]:
        return self._rows

    def lift(self, domain) -> "Mat7":
        """Same matrix over a wider domain (``QQ`` -> rational functions)."""
        if domain == self.domain:
            return self
        if self.domain == QQ and domain == FIELD_DOMAIN:
            return Mat7._raw(
                [[as_ratfn(to_rat(v)) for v in row] for row in self._rows], FIELD_DOMAIN
            )
        raise RingMismatchError(f"cannot lift entries over {self.domain} to {domain}")

    def _zip(self, other: "Mat7", op) -> "Mat7":
        domain = _common_domain(self.domain, other.domain)
        lhs, rhs = self.lift(domain), other.lift(domain)
        return Mat7._raw(
            [[op(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(lhs._rows, rhs._rows)], domain
        )

    def __add__(self, other: "Mat7") -> "Mat7":
        return self._zip(other, lambda a, b: a + b)

    def __sub__(self, other: "Mat7") -> "Mat7":
        return self._zip(other, lambda a, b: a - b)

    def __neg__(self) -> "Mat7":
        return Mat7._raw([[-v for v in row] for row in self._rows], self.domain)

    def __matmul__(self, other: "Mat7") -> "Mat7":
        return mat_mul(self, other)

    def scale(self, factor: Scalar) -> "Mat7":
        """Multiply every entry by ``factor``."""
        domain = self.domain
        if isinstance(factor, FracElement) and domain == QQ:
            domain = FIELD_DOMAIN
        base = self.lift(domain)
        c = _convert(factor, domain)
        return Mat7._raw([[c * v for v in row] for row in base._rows], domain)

    def transpose(self) -> "Mat7":
        return Mat7._raw(list(zip(*self._rows)), self.domain)

    def is_zero(self) -> bool:
        return not any(v for row in self._rows for v in row)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Mat7):
            return NotImplemented
        try:
            domain = _common_domain(self.domain, other.domain)
        except RingMismatchError:
            return False
        return self.lift(domain)._rows == other.lift(domain)._rows

    def __hash__(self) -> int:
        return hash(tuple(to_infix(v) for row in self._rows for v in row))

    def to_domain_matrix(self) -> DomainMatrix:
        return DomainMatrix([list(row) for row in self._rows], (SIZE, SIZE), self.domain)

    def det(self) -> Scalar:
        value = self.to_domain_matrix().det()
        return to_rat(value) if self.domain == QQ else value

    def entry_texts(self) -> list[list[str]]:
        return [[to_infix(self[i, j]) for j in range(SIZE)] for i in range(SIZE)]

    def to_json(self) -> list[list[str]]:
        """Row-major list of infix strings."""
        return self.entry_texts()

    def pretty(self) -> str:
        """Aligned-column text rendering."""
        texts = self.entry_texts()
        width = max(len(t) for row in texts for t in row)
        return "\n".join("[ " + "  ".join(t.rjust(width) for t in row) + " ]" for row in texts)

    def __repr__(self) -> str:
        return f"Mat7({json.dumps(self.to_json())})"


def identity(domain=QQ) -> Mat7:
    return Mat7._raw(
        [[domain.one if i == j else domain.zero for j in range(SIZE)] for i in range(SIZE)], domain
    )


def zero(domain=QQ) -> Mat7:
    return Mat7._raw([[domain.zero] * SIZE for _ in range(SIZE)], domain)


def diag(values: Sequence[Scalar]) -> Mat7:
    if len(values) != SIZE:
        raise ValueError(f"diag needs 7 values, got {len(values)}")
    return Mat7.from_entries({(i, i): v for i, v in enumerate(values)})


def mat_mul(left: Mat7, right: Mat7) -> Mat7:
    """Exact product.

    Raises:
        RingMismatchError: If the entry rings are incompatible.
    """
    domain = _common_domain(left.domain, right.domain)
    lhs, rhs = left.lift(domain), right.lift(domain)
    columns = list(zip(*rhs._rows))
    product = []
    for row in lhs._rows:
        out = []
        for column in columns:
            acc = domain.zero
            for a, b in zip(row, column):
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        product.append(out)
    return Mat7._raw(product, domain)


def commutator(left: Mat7, right: Mat7) -> Mat7:
    return mat_mul(left, right) - mat_mul(right, left)


def _nilpotent_powers(matrix: Mat7) -> list[Mat7]:
    """``[X, X^2, ...]`` up to the last nonzero power; raises unless ``X^7 = 0``."""
    powers: list[Mat7] = []
    current = matrix
    for _ in range(SIZE):
        if current.is_zero():
            return powers
        powers.append(current)
        current = mat_mul(current, matrix)
    if not current.is_zero():
        raise NotNilpotentError("matrix has a nonzero 7th power")
    return powers


def is_nilpotent(matrix: Mat7) -> bool:
    try:
        _nilpotent_powers(matrix)
    except NotNilpotentError:
        return False
    return True


def exp_nilpotent(matrix: Mat7) -> Mat7:
    """Exponential of a nilpotent matrix as the finite sum of ``X^k / k!``.

    Raises:
        NotNilpotentError: If ``X^7 != 0``.
    """
    result = identity(matrix.domain)
    for k, power in enumerate(_nilpotent_powers(matrix), start=1):
        result = result + power.scale(Fraction(1, factorial(k)))
    return result


def log_unipotent(matrix: Mat7) -> Mat7:
    """Logarithm of a unipotent matrix as the finite alternating series.

    Raises:
        NotNilpotentError: If ``U - I`` is not nilpotent.
    """
    nilpart = matrix - identity(matrix.domain)
    result = zero(matrix.domain)
    for k, power in enumerate(_nilpotent_powers(nilpart), start=1):
        sign = 1 if k % 2 else -1
        result = result + power.scale(Fraction(sign, k))
    return result


def mat_inv(matrix: Mat7) -> Mat7:
    """Exact inverse.

    Unipotent matrices use the finite Neumann series; everything else is the
    adjugate of a sympy ``DomainMatrix`` divided by its determinant, with no
    pivoting over the rational function field.

    Raises:
        SingularMatrixError: If the determinant is zero.
    """
    nilpart = matrix - identity(matrix.domain)
    if is_nilpotent(nilpart):
        result = identity(matrix.domain)
        term = identity(matrix.domain)
        for _ in range(SIZE - 1):
            term = mat_mul(term, -nilpart)
            result = result + term
        return result
    dm = matrix.to_domain_matrix()
    det = dm.det()
    if not det:
        raise SingularMatrixError("matrix is singular")
    rows = [[entry / det for entry in row] for row in dm.adjugate().to_list()]
    return Mat7._raw(rows, matrix.domain)


class Cell(Enum):
    ZERO = "0"
    FREE = "*"
    ONE = "1"


class ZeroPattern:
    """
    Structural 7x7 predicate: each cell is must-be-zero, free or must-be-one.

    Patterns are written as 7 strings of 7 whitespace-separated symbols from
    ``0``, ``*`` and ``1``.
    """

    __slots__ = ("mask",)

    def __init__(self, mask: Sequence[Sequence[Cell]]):
        if len(mask) != SIZE or any(len(row) != SIZE for row in mask):
            raise ValueError("ZeroPattern needs a 7x7 mask")
        self.mask = tuple(tuple(Cell(c) for c in row) for row in mask)

    @classmethod
    def parse(cls, rows: Sequence[str]) -> "ZeroPattern":
        return cls([[Cell(symbol) for symbol in row.split()] for row in rows])

    def differences(self, other: "ZeroPattern") -> list[tuple[int, int]]:
        """1-based positions where two patterns disagree."""
        return [
            (i + 1, j + 1)
            for i in range(SIZE)
            for j in range(SIZE)
            if self.mask[i][j] != other.mask[i][j]
        ]

    def to_rows(self) -> list[str]:
        return [" ".join(c.value for c in row) for row in self.mask]


def violations(matrix: Mat7, pattern: ZeroPattern) -> list[tuple[int, int]]:
    """1-based positions where ``matrix`` breaks ``pattern``."""
    bad = []
    one = matrix.domain.one
    for i in range(SIZE):
        for j in range(SIZE):
            cell = pattern.mask[i][j]
            value = matrix.raw(i, j)
            if cell is Cell.ZERO and value:
                bad.append((i + 1, j + 1))
            elif cell is Cell.ONE and value != one:
                bad.append((i + 1, j + 1))
    return bad


def matches_pattern(matrix: Mat7, pattern: ZeroPattern) -> bool:
    """True iff every must-be-zero entry is zero and every must-be-one entry is one."""
    return not violations(matrix, pattern)


def optional_det_sign(matrix: Mat7) -> Optional[int]:
    """``+1``/``-1`` when the determinant is a sign, ``None`` otherwise."""
    value = to_rat(matrix.det())
    if value in (1, -1):
        return int(value)
    return None

"""
Exact coefficient arithmetic over one global field of rational functions.

Every symbolic quantity in the package is an element of ``FIELD``, the field of
rational functions over QQ in a fixed namespace of symbols. Elements are sympy
``FracElement`` values: numerator and denominator are sparse polynomials kept in
graded-lex order and common factors are cancelled on construction, so ``==`` is
exact. Plain numbers are ``fractions.Fraction``.

The namespace holds the Lie-algebra coordinates (a, b, x.., y..), the auxiliary
parameters s, t, x and two primed copies of the opposite-unipotent coordinates
(``yp10``.. and ``ypp10``..) used when certifying the group law.

References:
    - sympy.polys.fields / sympy.polys.rings (sparse multivariate arithmetic)
"""

import logging
import operator
from fractions import Fraction
from typing import Literal, Mapping, Union

from sympy import Symbol
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations
from sympy.polys.domains import QQ
from sympy.polys.fields import FracElement, field
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyElement

log = logging.getLogger(__name__)

NBAR_INDICES = ("10", "11", "21", "31", "32")

LIE_SYMBOLS = (
    "a",
    "b",
    "x01",
    "x10",
    "x11",
    "x21",
    "x31",
    "x32",
    "y01",
    "y10",
    "y11",
    "y21",
    "y31",
    "y32",
)
AUX_SYMBOLS = ("s", "t", "x")
PRIMED_SYMBOLS = tuple(f"yp{ij}" for ij in NBAR_INDICES)
DOUBLE_PRIMED_SYMBOLS = tuple(f"ypp{ij}" for ij in NBAR_INDICES)

SYMBOL_NAMES = LIE_SYMBOLS + AUX_SYMBOLS + PRIMED_SYMBOLS + DOUBLE_PRIMED_SYMBOLS

FIELD, *_GENERATORS = field(SYMBOL_NAMES, QQ, grlex)
RING = FIELD.ring
FIELD_DOMAIN = FIELD.to_domain()
GENERATORS = dict(zip(SYMBOL_NAMES, _GENERATORS))
_INDEX = {name: i for i, name in enumerate(SYMBOL_NAMES)}

RatFn = FracElement
Rat = Fraction
Scalar = Union[int, Fraction, FracElement]
ArithOp = Literal["add", "sub", "mul", "div"]

_OPERATORS = {
    "add": operator.add,
    "sub": operator.sub,
    "mul": operator.mul,
    "div": operator.truediv,
}
_PARSE_LOCALS = {name: Symbol(name) for name in SYMBOL_NAMES}
_PARSE_TRANSFORMATIONS = standard_transformations + (convert_xor,)


class UnknownSymbolError(ValueError):
    """Raised when a name outside the fixed symbol namespace is used."""


class DivisionByZeroError(ZeroDivisionError):
    """Raised when dividing by the zero rational function."""


class VanishingDenominatorError(ZeroDivisionError):
    """Raised when a substitution makes a denominator identically zero."""


def sym(name: str) -> RatFn:
    """Return the generator of ``FIELD`` named ``name``.

    Raises:
        UnknownSymbolError: If the name is not in the namespace.
    """
    try:
        return GENERATORS[name]
    except KeyError:
        raise UnknownSymbolError(f"unknown symbol {name!r}") from None


def symbol_index(name: str) -> int:
    """Position of ``name`` in exponent vectors."""
    if name not in _INDEX:
        raise UnknownSymbolError(f"unknown symbol {name!r}")
    return _INDEX[name]


def _qq_to_fraction(value) -> Fraction:
    return Fraction(int(value.numerator), int(value.denominator))


def as_ratfn(value: Scalar) -> RatFn:
    """Coerce an int, Fraction, QQ element or field element into ``FIELD``."""
    if isinstance(value, FracElement):
        if value.field != FIELD:
            raise TypeError("rational function belongs to a foreign field")
        return value
    if isinstance(value, PolyElement):
        return FIELD.new(value)
    if isinstance(value, bool):
        raise TypeError("booleans are not ring elements")
    if isinstance(value, int):
        return FIELD(value)
    if isinstance(value, Fraction):
        return FIELD(QQ(value.numerator, value.denominator))
    if QQ.of_type(value):
        return FIELD(value)
    raise TypeError(f"cannot coerce {type(value).__name__} into the rational function field")


def unify(*values: Scalar) -> tuple[Scalar, ...]:
    """All Fractions, or all field elements as soon as one value is symbolic."""
    if any(isinstance(v, FracElement) for v in values):
        return tuple(as_ratfn(v) for v in values)
    return tuple(to_rat(v) for v in values)


def like(value: Scalar, reference: Scalar) -> Scalar:
    """``value`` in the representation of ``reference`` (Fraction or field element)."""
    return as_ratfn(value) if isinstance(reference, FracElement) else to_rat(value)


def const(value: Union[int, str, Fraction]) -> RatFn:
    """Constant rational function, e.g. ``const("3/4")``."""
    return as_ratfn(Fraction(value))


def is_constant(f: Scalar) -> bool:
    if not isinstance(f, FracElement):
        return True
    return f.numer.is_ground and f.denom.is_ground


def to_rat(f: Scalar) -> Fraction:
    """Convert a constant rational function (or plain number) to a Fraction."""
    if isinstance(f, FracElement):
        if not is_constant(f):
            raise ValueError(f"expression is not constant: {to_infix(f)}")
        return _qq_to_fraction(f.numer.LC) / _qq_to_fraction(f.denom.LC)
    if isinstance(f, (int, Fraction)):
        return Fraction(f)
    if QQ.of_type(f):
        return _qq_to_fraction(f)
    raise TypeError(f"cannot read {type(f).__name__} as a rational")


def ratfn_arith(lhs: Scalar, rhs: Scalar, op: ArithOp) -> RatFn:
    """Exact ``lhs op rhs`` in ``FIELD``.

    Args:
        lhs: Left operand
        rhs: Right operand
        op: One of ``add``, ``sub``, ``mul``, ``div``

    Returns:
        Normalized rational function

    Raises:
        DivisionByZeroError: If ``op`` is ``div`` and ``rhs`` is zero.
        ValueError: For an unknown operation name.
    """
    if op not in _OPERATORS:
        raise ValueError(f"op must be one of {sorted(_OPERATORS)}, got {op!r}")
    left, right = as_ratfn(lhs), as_ratfn(rhs)
    if op == "div" and not right:
        raise DivisionByZeroError("division by the zero rational function")
    return _OPERATORS[op](left, right)


def cross_equal(f: RatFn, g: RatFn) -> bool:
    """Equality by cross-multiplication; valid for unnormalized quotients too."""
    return f.numer * g.denom == g.numer * f.denom


def free_symbols(f: Scalar) -> tuple[str, ...]:
    """Names that occur in numerator or denominator, in namespace order."""
    if not isinstance(f, FracElement):
        return ()
    used: set[int] = set()
    for poly in (f.numer, f.denom):
        for monom in poly.monoms():
            used.update(i for i, exponent in enumerate(monom) if exponent)
    return tuple(SYMBOL_NAMES[i] for i in sorted(used))


def substitute(f: Scalar, bindings: Mapping[str, Scalar]) -> RatFn:
    """Substitute rational functions for symbols and renormalize.

    Symbols absent from ``bindings`` stay fixed. Polynomial images are composed
    inside the polynomial ring; any rational image switches to field arithmetic.

    Args:
        f: Expression to transform
        bindings: Map from symbol name to its image

    Returns:
        The composed rational function

    Raises:
        UnknownSymbolError: If a binding names an unknown symbol.
        VanishingDenominatorError: If the image of the denominator is zero.

    Example:
        >>> substitute(sym("x21") / sym("x32"), {"x21": sym("t") * sym("x21")})
    """
    f = as_ratfn(f)
    images = {symbol_index(name): as_ratfn(value) for name, value in bindings.items()}
    if all(image.denom == RING.one for image in images.values()):
        pairs = [(RING.gens[i], image.numer) for i, image in images.items()]
        numer = f.numer.compose(pairs) if pairs else f.numer
        denom = f.denom.compose(pairs) if pairs else f.denom
        if not denom:
            raise VanishingDenominatorError(f"denominator of {to_infix(f)} vanishes")
        return FIELD.new(numer, denom)

    full = [images.get(i, gen) for i, gen in enumerate(FIELD.gens)]
    numer = _evaluate(f.numer, full)
    denom = _evaluate(f.denom, full)
    if not denom:
        raise VanishingDenominatorError(f"denominator of {to_infix(f)} vanishes")
    return numer / denom


def _evaluate(poly: PolyElement, images: list[RatFn]) -> RatFn:
    total = FIELD.zero
    for monom, coeff in poly.terms():
        term = FIELD(coeff)
        for index, exponent in enumerate(monom):
            if exponent:
                term = term * images[index] ** exponent
        total = total + term
    return total


def evaluate_rat(f: Scalar, point: Mapping[str, Union[int, Fraction]]) -> Fraction:
    """Evaluate at a rational point; every free symbol must be bound."""
    value = substitute(f, point)
    return to_rat(value)


def parse(text: str) -> RatFn:
    """Parse infix text (``^`` or ``**`` powers) into ``FIELD``.

    Raises:
        UnknownSymbolError: If the text mentions a name outside the namespace.
    """
    expr = parse_expr(text, local_dict=_PARSE_LOCALS, transformations=_PARSE_TRANSFORMATIONS)
    unknown = sorted(str(s) for s in expr.free_symbols if str(s) not in _INDEX)
    if unknown:
        raise UnknownSymbolError(f"unknown symbols {unknown} in {text!r}")
    return FIELD.from_expr(expr)


def normalized(f: Scalar) -> tuple[PolyElement, PolyElement]:
    """Numerator and denominator scaled so the denominator is monic."""
    f = as_ratfn(f)
    lead = f.denom.LC
    return f.numer.quo_ground(lead), f.denom.quo_ground(lead)


def _monomial_text(monom: tuple[int, ...], name_of, power_of) -> list[str]:
    factors = []
    for index, exponent in enumerate(monom):
        if exponent:
            factors.append(power_of(name_of(SYMBOL_NAMES[index]), exponent))
    return factors


def _poly_infix(poly: PolyElement) -> str:
    if not poly:
        return "0"
    text = ""
    for position, (monom, coeff) in enumerate(poly.terms()):
        c = _qq_to_fraction(coeff)
        body = "*".join(
            _monomial_text(monom, lambda n: n, lambda n, e: n if e == 1 else f"{n}^{e}")
        )
        magnitude = abs(c)
        if not body:
            piece = str(magnitude)
        elif magnitude == 1:
            piece = body
        else:
            piece = f"{magnitude}*{body}"
        if position == 0:
            text = f"-{piece}" if c < 0 else piece
        else:
            text += f" - {piece}" if c < 0 else f" + {piece}"
    return text


def to_infix(f: Scalar) -> str:
    """Deterministic infix serialization with ``^`` powers and a monic denominator."""
    if isinstance(f, (int, Fraction)):
        return str(Fraction(f))
    if QQ.of_type(f):
        return str(_qq_to_fraction(f))
    numer, denom = normalized(f)
    num_text = _poly_infix(numer)
    if denom == RING.one:
        return num_text
    den_text = _poly_infix(denom)
    if len(numer) > 1:
        num_text = f"({num_text})"
    if len(denom) > 1 or "*" in den_text:
        den_text = f"({den_text})"
    return f"{num_text}/{den_text}"


def latex_symbol(name: str) -> str:
    """``x21`` -> ``x_{21}``, ``yp10`` -> ``y_{10}'``."""
    if name.startswith("ypp"):
        return f"y_{{{name[3:]}}}''"
    if name.startswith("yp"):
        return f"y_{{{name[2:]}}}'"
    if len(name) == 3:
        return f"{name[0]}_{{{name[1:]}}}"
    return name


def _latex_coefficient(magnitude: Fraction) -> str:
    if magnitude.denominator == 1:
        return str(magnitude.numerator)
    return f"\\frac{{{magnitude.numerator}}}{{{magnitude.denominator}}}"


def _poly_latex(poly: PolyElement) -> str:
    if not poly:
        return "0"
    text = ""
    for position, (monom, coeff) in enumerate(poly.terms()):
        c = _qq_to_fraction(coeff)
        body = "".join(
            _monomial_text(monom, latex_symbol, lambda n, e: n if e == 1 else f"{n}^{{{e}}}")
        )
        magnitude = abs(c)
        if not body:
            piece = _latex_coefficient(magnitude)
        elif magnitude == 1:
            piece = body
        else:
            piece = _latex_coefficient(magnitude) + body
        if position == 0:
            text = f"-{piece}" if c < 0 else piece
        else:
            text += f"-{piece}" if c < 0 else f"+{piece}"
    return text


def to_latex(f: Scalar) -> str:
    """LaTeX rendering, e.g. ``\\frac{\\frac{1}{2}x_{21}-x_{31}}{x_{21}^{2}+x_{32}}``."""
    if isinstance(f, (int, Fraction)):
        f = as_ratfn(f)
    numer, denom = normalized(f)
    if denom == RING.one:
        return _poly_latex(numer)
    return f"\\frac{{{_poly_latex(numer)}}}{{{_poly_latex(denom)}}}"


def derivative(f: RatFn, name: str) -> RatFn:
    """Partial derivative of ``f`` with respect to the symbol ``name``."""
    return as_ratfn(f).diff(sym(name))

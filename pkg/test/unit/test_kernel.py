"""Unit tests for the rational function kernel in ring.kernel module."""

from fractions import Fraction

import pytest
from sympy.polys.fields import FracElement

from src.ring.kernel import (
    FIELD,
    DivisionByZeroError,
    UnknownSymbolError,
    VanishingDenominatorError,
    as_ratfn,
    const,
    cross_equal,
    derivative,
    evaluate_rat,
    free_symbols,
    is_constant,
    latex_symbol,
    like,
    parse,
    ratfn_arith,
    substitute,
    sym,
    to_infix,
    to_latex,
    to_rat,
    unify,
)


class TestSymbols:
    """Tests for the fixed symbol namespace."""

    def test_known_symbol(self):
        """Test that a namespace symbol is a field generator."""
        assert isinstance(sym("x21"), FracElement)
        assert sym("x21") != sym("x31")

    def test_unknown_symbol_raises(self):
        """Test that names outside the namespace are rejected."""
        with pytest.raises(UnknownSymbolError, match="unknown symbol"):
            sym("q")

    def test_parse_rejects_unknown_names(self):
        """Test that parse rejects foreign symbols."""
        with pytest.raises(UnknownSymbolError):
            parse("x21 + z99")

    def test_primed_symbols_exist(self):
        """Test that primed group-law coordinates are available."""
        assert sym("yp10") != sym("ypp10")


class TestRatfnArith:
    """Tests for ratfn_arith."""

    def test_add_and_cancel(self):
        """Test that x - x normalizes to zero."""
        x21 = sym("x21")
        assert ratfn_arith(x21, x21, "sub") == FIELD.zero

    def test_division_cancels_common_factors(self):
        """Test that common factors are cancelled on construction."""
        x21, x32 = sym("x21"), sym("x32")
        result = ratfn_arith(x21 * x32, x32**2, "div")
        assert result == x21 / x32
        assert result.denom == (x32).numer

    def test_mixed_operands(self):
        """Test that Fractions and ints are coerced."""
        assert ratfn_arith(Fraction(1, 2), 2, "mul") == FIELD(1)

    def test_division_by_zero(self):
        """Test that dividing by zero raises."""
        with pytest.raises(DivisionByZeroError):
            ratfn_arith(sym("x21"), 0, "div")

    def test_unknown_operation(self):
        """Test that an unknown operation name raises ValueError."""
        with pytest.raises(ValueError, match="op must be one of"):
            ratfn_arith(1, 1, "pow")


class TestCoercion:
    """Tests for coercion between Fractions and field elements."""

    def test_to_rat_of_constant(self):
        """Test that a constant field element reads back as a Fraction."""
        assert to_rat(const("3/4")) == Fraction(3, 4)

    def test_to_rat_of_symbolic_raises(self):
        """Test that a non-constant expression is not a rational."""
        with pytest.raises(ValueError, match="not constant"):
            to_rat(sym("x21"))

    def test_booleans_rejected(self):
        """Test that booleans are not ring elements."""
        with pytest.raises(TypeError):
            as_ratfn(True)

    def test_unify_plain_numbers(self):
        """Test that plain numbers stay Fractions."""
        assert unify(1, Fraction(1, 2)) == (Fraction(1), Fraction(1, 2))

    def test_unify_with_symbolic(self):
        """Test that one symbolic value lifts everything into the field."""
        values = unify(1, sym("x21"))
        assert all(isinstance(v, FracElement) for v in values)

    def test_like(self):
        """Test that like follows the reference representation."""
        assert isinstance(like(Fraction(1, 2), sym("x21")), FracElement)
        assert like(FIELD(3), Fraction(1)) == Fraction(3)

    def test_is_constant(self):
        """Test constant detection."""
        assert is_constant(const(5))
        assert is_constant(Fraction(1, 3))
        assert not is_constant(sym("x32"))


class TestSubstitute:
    """Tests for substitution and evaluation."""

    def test_polynomial_image(self):
        """Test substitution of a polynomial image."""
        result = substitute(parse("x21*x32"), {"x21": sym("t") * sym("x21")})
        assert result == parse("t*x21*x32")

    def test_rational_image(self):
        """Test substitution of a rational image."""
        result = substitute(parse("x21 + 1"), {"x21": parse("1/x32")})
        assert result == parse("(1 + x32)/x32")

    def test_vanishing_denominator(self):
        """Test that a zero denominator image raises."""
        with pytest.raises(VanishingDenominatorError):
            substitute(parse("x21/x32"), {"x32": 0})

    def test_unbound_symbols_stay(self):
        """Test that symbols without bindings are kept."""
        assert substitute(parse("x21 + x31"), {"x21": 1}) == parse("1 + x31")

    def test_evaluate_rat(self):
        """Test exact evaluation at a rational point."""
        value = evaluate_rat(parse("x21^2 + x32"), {"x21": 2, "x32": Fraction(1, 2)})
        assert value == Fraction(9, 2)

    def test_free_symbols(self):
        """Test that free symbols come in namespace order."""
        assert free_symbols(parse("x32/x21")) == ("x21", "x32")
        assert free_symbols(Fraction(2)) == ()


class TestSerialization:
    """Tests for infix and LaTeX output."""

    def test_infix_polynomial(self):
        """Test graded-lex term order in infix output."""
        assert to_infix(parse("x32 + x21^2")) == "x21^2 + x32"

    def test_infix_fraction(self):
        """Test that plain rationals print as fractions."""
        assert to_infix(Fraction(3, 4)) == "3/4"

    def test_infix_quotient(self):
        """Test a quotient with a single-term denominator."""
        assert to_infix(parse("1/x32")) == "1/x32"

    def test_infix_parses_back(self):
        """Test that infix output parses to the same element."""
        f = parse("(x21/2 - x31)/(x21^2 + x32)")
        assert parse(to_infix(f)) == f

    def test_latex_x_alpha(self):
        """Test LaTeX rendering of a quotient with a fractional coefficient."""
        f = parse("(x21/2 - x31)/(x21^2 + x32)")
        assert to_latex(f) == "\\frac{\\frac{1}{2}x_{21}-x_{31}}{x_{21}^{2}+x_{32}}"

    def test_latex_symbol(self):
        """Test LaTeX names of plain and primed symbols."""
        assert latex_symbol("x21") == "x_{21}"
        assert latex_symbol("yp10") == "y_{10}'"
        assert latex_symbol("ypp31") == "y_{31}''"
        assert latex_symbol("s") == "s"


class TestCalculus:
    """Tests for derivatives and cross-multiplied equality."""

    def test_derivative(self):
        """Test a partial derivative."""
        assert derivative(parse("x21^2*x32"), "x21") == parse("2*x21*x32")

    def test_cross_equal(self):
        """Test equality by cross-multiplication."""
        assert cross_equal(parse("x21/x32"), parse("(2*x21)/(2*x32)"))
        assert not cross_equal(parse("x21/x32"), parse("x32/x21"))

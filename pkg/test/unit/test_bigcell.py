"""Unit tests for the big cell decomposition."""

from fractions import Fraction

import numpy as np
import pytest

from src.group.bigcell import (
    D_VARIANTS,
    EXPECTED_WEIGHTS,
    DiscriminantError,
    NbarCoords,
    OutsideBigCellError,
    bruhat_gl2,
    decompose,
    discriminant,
    homogeneity_certificate,
    m_entries_from_forms,
    nbar_closed_form,
    nbar_from_matrix,
    nbar_matrix,
    solve_nbar,
    symbolic_decomposition,
    x_alpha,
)
from src.group.levi import DomainKind, DomainPoint, GL2Elem, NCoords, PatternError, n_matrix
from src.ring.kernel import parse
from src.ring.sampling import random_rat

q = Fraction


class TestNbarCoords:
    """Tests for coordinates on the opposite radical."""

    def test_defaults(self):
        """Test that unset coordinates are zero."""
        assert NbarCoords().values() == (0, 0, 0, 0, 0)

    def test_negation(self):
        """Test coordinate negation."""
        assert -NbarCoords(1, 2, 3, 4, 5) == NbarCoords(-1, -2, -3, -4, -5)

    def test_round_trip(self):
        """Test that coordinates read back from exp(nbar)."""
        nbar = NbarCoords(1, q(1, 2), 3, 4, 5)
        assert nbar_from_matrix(nbar_matrix(nbar)) == nbar

    def test_upper_matrix_rejected(self):
        """Test that an element of N is not in the opposite radical."""
        with pytest.raises(PatternError):
            nbar_from_matrix(n_matrix(NCoords(1, 0, 0, 0, 0)))


class TestClosedForms:
    """Tests for nbar_closed_form."""

    def test_value_at_unit_point(self):
        """Test the closed forms at (1, 0, 0)."""
        assert nbar_closed_form(1, 0, 0).values() == (0, q(1, 2), 1, 0, q(3, 4))

    def test_value_at_second_point(self):
        """Test the closed forms at (2, 1, 1), where D = 5."""
        expected = (q(1, 5), 0, q(2, 5), q(-1, 25), q(1, 5))
        assert nbar_closed_form(2, 1, 1).values() == expected

    def test_vanishing_discriminant(self):
        """Test that D = 0 raises."""
        with pytest.raises(DiscriminantError):
            nbar_closed_form(0, 1, 0)

    def test_discriminant(self):
        """Test D = x21^2 + x10 x32 on D."""
        point = DomainPoint(DomainKind.D, NCoords(2, 0, 3, 0, 5))
        assert discriminant(point) == 19


class TestSolveNbar:
    """Tests for solve_nbar."""

    def test_examples(self):
        """Test the solver at two points of D0."""
        assert solve_nbar(DomainPoint.d0(1, 0, 0)) == nbar_closed_form(1, 0, 0)
        expected = NbarCoords(q(1, 5), 0, q(2, 5), q(-1, 25), q(1, 5))
        assert solve_nbar(DomainPoint.d0(2, 1, 1)) == expected

    def test_symbolic_on_d(self):
        """Test that the solver certifies the general-x10 closed forms."""
        point = DomainPoint.symbolic(DomainKind.D)
        c = point.coords
        assert solve_nbar(point) == nbar_closed_form(c.x21, c.x31, c.x32, x10=c.x10)

    def test_degenerate_x21_x32(self):
        """Test a point with x21 x32 = 0 and D != 0."""
        point = DomainPoint.d0(0, 1, 2)
        assert solve_nbar(point) == nbar_closed_form(0, 1, 2)


class TestDecompose:
    """Tests for decompose."""

    def test_levi_part_at_unit_point(self):
        """Test m at (1, 0, 0)."""
        m = decompose(DomainPoint.d0(1, 0, 0)).m
        assert m.rows() == [[1, 0], [q(-3, 4), 1]]

    def test_numeric_point(self):
        """Test that the decomposition uses the closed forms."""
        result = decompose(DomainPoint.d0(2, 1, 1))
        assert result.nbar == nbar_closed_form(2, 1, 1)
        assert result.discriminant == 5
        assert result.m.det() == q(1, 5)

    def test_symbolic(self):
        """Test det m and c at the generic point."""
        symbolic = symbolic_decomposition()
        assert symbolic.m.det() == 1 / parse("x21^2 + x32")
        assert symbolic.m.c == parse("-(3/4*x21^2 + x31^2 + x32)/(x21^2 + x32)^2")

    def test_entry_forms(self):
        """Test the Levi entries as polynomials in the nbar coordinates."""
        symbolic = symbolic_decomposition()
        m = symbolic.m
        assert m_entries_from_forms(symbolic.nbar) == {"a": m.a, "b": m.b, "c": m.c, "d": m.d}

    def test_derived_d_variant(self):
        """Test that the derived d form matches and the printed one does not."""
        symbolic = symbolic_decomposition()
        derived = m_entries_from_forms(symbolic.nbar, {"d": D_VARIANTS["derived"]})["d"]
        printed = m_entries_from_forms(symbolic.nbar, {"d": D_VARIANTS["printed"]})["d"]
        assert derived == symbolic.m.d
        assert printed != symbolic.m.d

    def test_vanishing_discriminant(self):
        """Test that decompose refuses D = 0."""
        with pytest.raises(DiscriminantError):
            decompose(DomainPoint.d0(0, 1, 0))


class TestBruhat:
    """Tests for bruhat_gl2."""

    @pytest.mark.parametrize(
        "m, expected",
        [
            (GL2Elem(1, 0, q(-3, 4), 1), (q(-4, 3), q(-4, 3), q(3, 4), q(4, 3))),
            (GL2Elem(-1, 0, q(-5, 4), -1), (q(4, 5), q(4, 5), q(5, 4), q(4, 5))),
            (GL2Elem(0, 1, -1, 0), (0, 0, 1, 1)),
        ],
    )
    def test_factors(self, m, expected):
        """Test the Bruhat factors of three elements."""
        bruhat = bruhat_gl2(m)
        assert (bruhat.u1_entry, bruhat.u2_entry, bruhat.t1, bruhat.t2) == expected
        assert bruhat.product() == m

    def test_random_round_trip(self):
        """Test that the factors multiply back for random m with c != 0."""
        rng = np.random.default_rng(11)
        checked = 0
        while checked < 100:
            a, b, c, d = (random_rat(rng) for _ in range(4))
            if not c or a * d == b * c:
                continue
            m = GL2Elem(a, b, c, d)
            assert bruhat_gl2(m).product() == m
            checked += 1

    def test_outside_big_cell(self):
        """Test that c = 0 raises."""
        with pytest.raises(OutsideBigCellError):
            bruhat_gl2(GL2Elem.identity())


class TestXAlpha:
    """Tests for x_alpha."""

    def test_symbolic(self):
        """Test the closed form on D0."""
        assert x_alpha(DomainPoint.symbolic()) == parse("(1/2*x21 - x31)/(x21^2 + x32)")

    def test_numeric(self):
        """Test the value at (1, 0, 0)."""
        assert x_alpha(DomainPoint.d0(1, 0, 0)) == q(1, 2)

    def test_general_x10(self):
        """Test that the formula and the conjugation agree on D."""
        value = x_alpha(DomainPoint.symbolic(DomainKind.D))
        assert value == parse("(1/2*x10*x21 - x31)/(x21^2 + x10*x32)")


class TestHomogeneity:
    """Tests for homogeneity_certificate."""

    def test_all_claims_pass(self):
        """Test that every computed weight matches."""
        report = homogeneity_certificate()
        assert report.passed
        assert {c.name for c in report.claims} == set(EXPECTED_WEIGHTS)

    def test_twist(self):
        """Test that the y-weights agree with the torus twist."""
        report = homogeneity_certificate()
        assert report.twist_consistent
        assert report.twist_weights["y32"] == -2

    def test_weight_lookup(self):
        """Test weight lookup by name."""
        report = homogeneity_certificate()
        assert report.weight("x_alpha") == -1
        assert report.weight("t_block.-c") == -2
        with pytest.raises(KeyError):
            report.weight("nope")

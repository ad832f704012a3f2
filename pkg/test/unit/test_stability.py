"""Unit tests for the integrand exponent ledger in analysis.stability module."""

from fractions import Fraction

import pytest

from src.analysis.stability import (
    CHARACTER_PRINTINGS,
    CharExponent,
    IntegrandLedger,
    MissingCertificateError,
    UnitAssumption,
    build_ledger,
    constants_check,
    net_factor,
    render_ledger,
)
from src.group.bigcell import HomogeneityClaim, HomogeneityReport, homogeneity_certificate


@pytest.fixture(scope="module")
def ledger() -> IntegrandLedger:
    return build_ledger(homogeneity_certificate())


class TestCharExponent:
    """Tests for CharExponent."""

    def test_addition(self):
        """Test componentwise addition."""
        total = CharExponent(1, 2, Fraction(1, 2), 3) + CharExponent(1, -1, 1, -3)
        assert total == CharExponent(2, 1, Fraction(3, 2), 0)

    def test_invert_omega_pi(self):
        """Test that inverting omega_pi flips its exponent only."""
        assert CharExponent(2, 3, 1, 1).invert_omega_pi() == CharExponent(-2, 3, 1, 1)

    def test_label(self):
        """Test labels of trivial and mixed exponents."""
        assert CharExponent().label() == "1"
        assert CharExponent(2, 2).label() == "omega_pi(t^2) omega(t^2)"
        assert CharExponent(abs_const=-1, abs_s=-20).label() == "|t|^(-1 - 20s)"


class TestBuildLedger:
    """Tests for build_ledger."""

    def test_rows(self, ledger):
        """Test that every factor has a row."""
        names = [row.name for row in ledger.rows]
        assert names == ["gamma", "J", "x_alpha", "det_twist", "abs_det", "measure"]

    def test_x_alpha_row(self, ledger):
        """Test the character row imported from the x_alpha weight."""
        assert ledger.row("x_alpha").exponent == CharExponent(2, 4)
        assert ledger.row("x_alpha").source == "homogeneity:x_alpha"

    def test_measure_row(self, ledger):
        """Test that the measure scales by |t|^4."""
        assert ledger.row("measure").exponent == CharExponent(abs_const=4)

    def test_unknown_row(self, ledger):
        """Test that an unknown row name raises KeyError."""
        with pytest.raises(KeyError):
            ledger.row("nope")

    def test_missing_certificate(self):
        """Test that the ledger needs a certificate."""
        with pytest.raises(MissingCertificateError):
            build_ledger(None)

    def test_failed_certificate(self):
        """Test that a failed certificate is refused."""
        failed = HomogeneityReport(
            claims=(HomogeneityClaim("x_alpha", -1, 0),), twist_weights={}, twist_consistent=True
        )
        with pytest.raises(MissingCertificateError):
            build_ledger(failed)


class TestNetFactor:
    """Tests for net_factor."""

    def test_units(self, ledger):
        """Test the net factor omega_pi(t^2) omega(t^2) for units."""
        assert net_factor(ledger, UnitAssumption(True)) == CharExponent(2, 2)

    def test_general_t(self, ledger):
        """Test the |t| part when t is not a unit."""
        net = net_factor(ledger, UnitAssumption(False))
        assert (net.abs_const, net.abs_s) == (-1, -20)

    def test_inverted_omega_pi(self, ledger):
        """Test the net factor after omega_pi -> omega_pi^-1."""
        assert net_factor(ledger, UnitAssumption()).invert_omega_pi() == CharExponent(-2, 2)

    def test_render(self, ledger):
        """Test that the rendered ledger ends with the net factor."""
        text = render_ledger(ledger, UnitAssumption())
        assert text.splitlines()[-1].split(None, 1) == ["net", "omega_pi(t^2) omega(t^2)"]


class TestConstantsCheck:
    """Tests for constants_check."""

    def test_parts(self):
        """Test the s-part and rho-part of the |det m| exponent."""
        report = constants_check()
        assert report.s_part == 10
        assert report.rho_part == Fraction(5, 2)
        assert report.z_exponent == 10

    def test_gamma(self):
        """Test that 40 = 2 * 20."""
        report = constants_check()
        assert report.gamma_coefficient == 40
        assert report.claimed_pairing == 20
        assert report.gamma_consistent
        assert report.passed

    def test_form_pairing_reported(self):
        """Test that the form pairing is reported alongside the claimed one."""
        report = constants_check()
        assert report.form_pairing == 10
        assert report.character_printings == CHARACTER_PRINTINGS

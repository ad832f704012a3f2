"""Unit tests for p-adic valuations and seeded sampling."""

from fractions import Fraction

import numpy as np
import pytest

from src.ring.kernel import parse
from src.ring.padic import (
    INFINITY,
    NotPrimeError,
    Scaled,
    random_unit,
    sample_scaled,
    scaled_evaluate,
    vp,
    with_valuation,
)
from src.ring.sampling import check_seed, random_nonzero_rat, random_ratfn


class TestValuation:
    """Tests for vp."""

    def test_negative_valuation(self):
        """Test the valuation of 3/4 at 2."""
        assert vp(Fraction(3, 4), 2) == -2

    def test_positive_valuation(self):
        """Test the valuation of 250 at 5."""
        assert vp(250, 5) == 3

    def test_sign_is_ignored(self):
        """Test that negative rationals have the valuation of their absolute value."""
        assert vp(Fraction(-1, 25), 5) == -2

    def test_zero_is_infinite(self):
        """Test that the valuation of zero is infinity."""
        assert vp(0, 5) == INFINITY

    def test_unit(self):
        """Test that a p-adic unit has valuation zero."""
        assert vp(Fraction(7, 3), 5) == 0

    def test_non_prime(self):
        """Test that a composite modulus raises."""
        with pytest.raises(NotPrimeError, match="must be prime"):
            vp(3, 4)


class TestScaled:
    """Tests for factored rationals."""

    def test_value(self):
        """Test that the value multiplies out."""
        assert Scaled(Fraction(3), 2).value(5) == 75

    def test_valuation_includes_mantissa(self):
        """Test that a mantissa divisible by p adds to the exponent."""
        assert Scaled(Fraction(5), -1).valuation(5) == 0

    def test_at_least(self):
        """Test lower bounds on the valuation of 25/3 * 5^-1."""
        scaled = Scaled(Fraction(25, 3), -1)
        assert scaled.at_least(1, 5)
        assert not scaled.at_least(2, 5)

    def test_at_least_with_p_in_denominator(self):
        """Test that a p in the mantissa denominator lowers the valuation."""
        assert not Scaled(Fraction(1, 5), 0).at_least(0, 5)

    def test_zero_meets_every_bound(self):
        """Test that zero satisfies any bound."""
        assert Scaled(Fraction(0), 0).at_least(100, 5)
        assert Scaled(Fraction(0), 0).valuation(5) == INFINITY

    def test_scaled_evaluate(self):
        """Test evaluating x21 + x31 at 1 and 25."""
        point = {"x21": Scaled(Fraction(1), 0), "x31": Scaled(Fraction(1), 2)}
        result = scaled_evaluate(parse("x21 + x31").numer, point, 5)
        assert result.value(5) == 26

    def test_scaled_evaluate_missing_symbol(self):
        """Test that an unbound symbol raises KeyError."""
        with pytest.raises(KeyError):
            scaled_evaluate(parse("x21").numer, {}, 5)


class TestSampling:
    """Tests for seeded random values."""

    def test_random_unit(self):
        """Test that random units have valuation zero."""
        rng = np.random.default_rng(0)
        assert all(vp(random_unit(rng, 5), 5) == 0 for _ in range(20))

    def test_with_valuation(self):
        """Test that sampled values have the requested valuation."""
        rng = np.random.default_rng(1)
        assert all(vp(with_valuation(rng, 3, -2), 3) == -2 for _ in range(20))

    def test_sample_scaled(self):
        """Test that sample_scaled has exact valuation."""
        rng = np.random.default_rng(2)
        assert sample_scaled(rng, 5, 4).valuation(5) == 4

    def test_nonzero_rat(self):
        """Test that random_nonzero_rat never returns zero."""
        rng = np.random.default_rng(3)
        assert all(random_nonzero_rat(rng) != 0 for _ in range(50))

    def test_random_ratfn_has_denominator(self):
        """Test that random rational functions are well defined."""
        rng = np.random.default_rng(4)
        assert random_ratfn(rng).denom

    def test_check_seed_is_stable(self):
        """Test that a check seed reproduces its stream."""
        first = check_seed(7, "ring.vp").integers(0, 1000, 5)
        second = check_seed(7, "ring.vp").integers(0, 1000, 5)
        assert list(first) == list(second)

    def test_check_seed_depends_on_check(self):
        """Test that different checks draw different streams."""
        first = check_seed(7, "ring.vp").integers(0, 10**9, 4)
        second = check_seed(7, "mat7.exp_log").integers(0, 10**9, 4)
        assert list(first) != list(second)

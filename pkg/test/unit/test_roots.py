"""Unit tests for the G2 root system and Weyl group."""

from fractions import Fraction

import pytest

from src.group.roots import (
    ALPHA,
    ALPHA_CHAR,
    BETA,
    BETA_CHAR,
    LONG_WORD,
    N_ROOTS,
    POSITIVE_ROOTS,
    ROOTS,
    W0_WORD,
    CharLattice,
    NotReducedError,
    Root,
    Simple,
    act,
    bilinear_form,
    coroot_pairing,
    element_key,
    is_reduced,
    parse_word,
    reduced_word,
    reflect,
    require_reduced,
    weyl_group,
    weyl_length,
    word_label,
)

A, B = Simple.ALPHA, Simple.BETA


class TestRoots:
    """Tests for the root table."""

    def test_counts(self):
        """Test that G2 has 12 roots, 6 of them positive."""
        assert len(ROOTS) == 12
        assert len(POSITIVE_ROOTS) == 6
        assert all(r.is_positive for r in POSITIVE_ROOTS)

    def test_highest_root(self):
        """Test the height of the highest root."""
        assert max(r.height for r in ROOTS) == 5
        assert Root(3, 2).height == 5

    def test_not_a_root(self):
        """Test that non-roots are rejected."""
        with pytest.raises(ValueError, match="not a root"):
            Root(1, 2)

    def test_labels(self):
        """Test root labels."""
        assert Root(3, 2).label() == "3α+2β"
        assert (-ALPHA).label() == "-α"
        assert CharLattice(0, 0).label() == "0"

    def test_unipotent_radical_roots(self):
        """Test that the radical uses every positive root except beta."""
        assert len(N_ROOTS) == 5
        assert BETA not in N_ROOTS


class TestBilinearForm:
    """Tests for the invariant form and coroot pairings."""

    def test_squared_lengths(self):
        """Test that beta is three times longer than alpha."""
        assert bilinear_form(ALPHA_CHAR, ALPHA_CHAR) == 1
        assert bilinear_form(BETA_CHAR, BETA_CHAR) == 3
        assert bilinear_form(ALPHA_CHAR, BETA_CHAR) == Fraction(-3, 2)

    def test_cartan_integers(self):
        """Test the off-diagonal Cartan integers."""
        assert coroot_pairing(ALPHA_CHAR, BETA_CHAR) == -1
        assert coroot_pairing(BETA_CHAR, ALPHA_CHAR) == -3

    def test_invariance(self):
        """Test that every Weyl element preserves the form."""
        chars = [r.character for r in ROOTS]
        for words in weyl_group().values():
            w = words[0]
            for x in chars:
                for y in chars:
                    assert bilinear_form(act(w, x), act(w, y)) == bilinear_form(x, y)


class TestWeylGroup:
    """Tests for the Weyl group."""

    def test_order(self):
        """Test that the Weyl group has 12 elements."""
        assert len(weyl_group()) == 12

    def test_simple_reflection(self):
        """Test that s_alpha negates alpha."""
        assert reflect(A, ALPHA_CHAR) == -ALPHA_CHAR
        assert reflect(A, BETA_CHAR) == CharLattice(3, 1)

    def test_reflections_permute_roots(self):
        """Test that simple reflections permute the roots."""
        chars = {r.character for r in ROOTS}
        for letter in (A, B):
            assert {reflect(letter, c) for c in chars} == chars

    def test_longest_element_is_minus_one(self):
        """Test that the longest element acts by -1."""
        assert act(LONG_WORD, ALPHA_CHAR) == -ALPHA_CHAR
        assert act(LONG_WORD, BETA_CHAR) == -BETA_CHAR
        assert weyl_length(LONG_WORD) == 6
        assert len(weyl_group()[element_key(LONG_WORD)]) == 2

    def test_w0_word_is_reduced(self):
        """Test the length-five word used for the big cell."""
        assert is_reduced(W0_WORD)
        assert weyl_length(W0_WORD) == 5

    def test_not_reduced(self):
        """Test that a repeated letter is not reduced."""
        assert not is_reduced((A, A))
        assert reduced_word((A, A)) == ()
        with pytest.raises(NotReducedError, match="not reduced"):
            require_reduced((A, B, B))

    def test_require_reduced_passes_through(self):
        """Test that reduced words are returned unchanged."""
        assert require_reduced((A, B)) == (A, B)


class TestWords:
    """Tests for word parsing and labels."""

    def test_parse_short_letters(self):
        """Test parsing comma-separated letters."""
        assert parse_word("a,b,a") == (A, B, A)

    def test_parse_long_names(self):
        """Test parsing full letter names."""
        assert parse_word("alpha beta") == (A, B)

    def test_parse_identity(self):
        """Test that e is the empty word."""
        assert parse_word("e") == ()
        assert parse_word("") == ()

    def test_parse_rejects_unknown_letters(self):
        """Test that other letters are rejected."""
        with pytest.raises(ValueError, match="alpha/beta"):
            parse_word("a,c")

    def test_word_label(self):
        """Test word labels."""
        assert word_label(()) == "e"
        assert word_label(W0_WORD) == "ababa"

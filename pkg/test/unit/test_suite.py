"""Unit tests for the check registry and suite runner."""

import pytest

from src.analysis.suite import (
    CHECKS,
    OPERATIONS,
    Check,
    Outcome,
    UnknownSelectorError,
    collect_findings,
    exit_code,
    operation_checks,
    register,
    reproduce_line,
    run_suite,
    select,
)
from src.model.models import CheckStatus, SuiteConfig

SMALL = SuiteConfig(samples=10, boundary_samples=10, bigcell_points=3, workers=2)


class TestRegistry:
    """Tests for the check registry."""

    def test_every_operation_is_exercised(self):
        """Test that each operation has at least one check."""
        manifest = operation_checks()
        assert set(OPERATIONS) <= set(manifest)
        assert all(manifest[name] for name in OPERATIONS)

    def test_duplicate_id(self):
        """Test that registering an existing id raises."""
        with pytest.raises(ValueError, match="duplicate check id"):
            register("ring.vp")(lambda ctx: Outcome(True))


class TestSelect:
    """Tests for selector parsing."""

    def test_all(self):
        """Test that 'all' selects every check."""
        assert len(select("all")) == len(CHECKS)

    def test_group_name(self):
        """Test that a bare group name selects the group."""
        ids = [check.check_id for check in select("ring")]
        assert ids == ["ring.ratfn_arith", "ring.substitute", "ring.vp", "ring.weighted_degree"]

    def test_comma_globs(self):
        """Test comma-separated patterns, sorted and deduplicated."""
        ids = [check.check_id for check in select("ring.vp, ring.*, cli.manifest")]
        assert ids[0] == "cli.manifest"
        assert ids.count("ring.vp") == 1

    def test_unknown(self):
        """Test that an unmatched selector raises."""
        with pytest.raises(UnknownSelectorError, match="matches no check"):
            select("nope.*")

    def test_empty(self):
        """Test that an empty selector raises."""
        with pytest.raises(UnknownSelectorError):
            select(" , ")


class TestRunSuite:
    """Tests for run_suite."""

    def test_ring_group_passes(self):
        """Test a small run of the ring checks."""
        report = run_suite("ring", SMALL, include_formulas=False)
        assert report.failed == 0
        assert report.passed == 4
        assert [r.check_id for r in report.results] == sorted(r.check_id for r in report.results)
        assert report.formulas == {} and report.findings == []
        assert exit_code(report) == 0

    def test_empty_kappa_range_skips(self):
        """Test that the box check is skipped for an empty kappa range."""
        config = SMALL.model_copy(update={"kappa_min": 3, "kappa_max": 2})
        report = run_suite("nbar.kappa_box", config, include_formulas=False)
        assert report.results[0].status is CheckStatus.SKIPPED
        assert exit_code(report) == 0

    def test_deterministic(self):
        """Test that a fixed seed reproduces the report."""
        first = run_suite("mat7.exp_log", SMALL, include_formulas=False)
        second = run_suite("mat7.exp_log", SMALL, include_formulas=False)
        assert first.model_dump() == second.model_dump()

    def test_failure_carries_reproduce_line(self, monkeypatch):
        """Test that a raising check fails with a reproduce command."""

        def boom(ctx):
            raise RuntimeError("boom")

        monkeypatch.setitem(CHECKS, "zz.boom", Check("zz.boom", (), boom))
        report = run_suite("zz.boom", SMALL, include_formulas=False)
        result = report.results[0]
        assert result.status is CheckStatus.FAIL
        assert result.detail == "RuntimeError: boom"
        assert result.reproduce == reproduce_line("zz.boom", SMALL)
        assert exit_code(report) == 1

    def test_formulas_and_findings(self):
        """Test that formulas and findings are embedded on request."""
        report = run_suite("cli.manifest", SMALL)
        assert set(report.formulas) == {"nbar_closed_form", "m_entries", "x_alpha", "group_law"}
        assert report.findings


class TestReproduceLine:
    """Tests for reproduce_line."""

    def test_format(self):
        """Test the reproduce command."""
        line = reproduce_line("ring.vp", SuiteConfig(samples=10))
        assert line == "g2 verify ring.vp --seed 7 --p 5 --kappa 1..6 --samples 10"


class TestFindings:
    """Tests for collect_findings."""

    def test_ids(self):
        """Test that every known discrepancy is reported."""
        ids = {f.finding_id for f in collect_findings()}
        assert {
            "p_shape.entry_2_5",
            "bruhat.torus_order",
            "nbar.y10",
            "nbar.y21",
            "nbar.y31",
            "m_entries.d",
            "group_law.z31",
            "group_law.z32",
            "constants.tilde_alpha_pairing",
        } <= ids
        assert "nbar.y11" not in ids

    def test_sign_findings(self):
        """Test that the nbar findings are sign flips."""
        findings = {f.finding_id: f for f in collect_findings()}
        assert findings["nbar.y10"].resolution == "opposite sign"

    def test_d_variant(self):
        """Test that the derived d form is among the matching variants."""
        findings = {f.finding_id: f for f in collect_findings()}
        assert "derived" in findings["m_entries.d"].resolution

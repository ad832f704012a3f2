"""Unit tests for the report models."""

import pytest
from pydantic import ValidationError

from src.model.models import CheckResult, CheckStatus, Finding, SuiteConfig, SuiteReport


class TestSuiteConfig:
    """Tests for SuiteConfig."""

    def test_defaults(self):
        """Test the default run parameters."""
        config = SuiteConfig()
        assert config.prime == 5
        assert config.kappa_range == range(1, 7)
        assert config.u1_valuation == -3

    def test_kappa_min_positive(self):
        """Test that kappa_min must be at least one."""
        with pytest.raises(ValidationError):
            SuiteConfig(kappa_min=0)

    def test_prime_must_be_prime(self):
        """Test that a composite residue characteristic is rejected."""
        with pytest.raises(ValidationError, match="prime must be a prime number"):
            SuiteConfig(prime=4)

    def test_empty_range_allowed(self):
        """Test that an inverted range is empty rather than invalid."""
        assert not SuiteConfig(kappa_min=3, kappa_max=2).kappa_range

    def test_schema_example(self):
        """Test that the schema carries an example."""
        schema = SuiteConfig.model_json_schema()
        assert schema["examples"][0]["seed"] == 7


class TestSuiteReport:
    """Tests for SuiteReport."""

    def _report(self) -> SuiteReport:
        return SuiteReport(
            schema_version="1.0",
            selector="all",
            config=SuiteConfig(),
            results=[
                CheckResult(check_id="a.one", status=CheckStatus.PASS),
                CheckResult(check_id="a.two", status=CheckStatus.FAIL, reproduce="g2 verify"),
                CheckResult(check_id="a.three", status=CheckStatus.SKIPPED),
            ],
        )

    def test_counts(self):
        """Test the computed counters."""
        report = self._report()
        assert (report.passed, report.failed, report.skipped) == (1, 1, 1)

    def test_dump_includes_counts(self):
        """Test that counters appear in the JSON dump."""
        dumped = self._report().model_dump(mode="json")
        assert dumped["failed"] == 1
        assert dumped["results"][0]["status"] == "pass"

    def test_finding(self):
        """Test a finding record."""
        finding = Finding(finding_id="x", printed="a", derived="b", resolution="c")
        assert finding.model_dump()["resolution"] == "c"

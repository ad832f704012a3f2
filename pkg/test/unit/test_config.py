"""Unit tests for the config module."""

from pathlib import Path
from src.config import Settings, settings
from src.model.models import SuiteConfig


class TestSettingsDefaults:
    """Tests for Settings default values."""

    def test_default_prime(self):
        """Test that default prime is 5."""
        s = Settings()
        assert s.prime == 5

    def test_default_kappa_range(self):
        """Test that the default kappa range is 1..6."""
        s = Settings()
        assert (s.kappa_min, s.kappa_max) == (1, 6)

    def test_default_sampling(self):
        """Test the default sample counts and seed."""
        s = Settings()
        assert s.samples == 1000
        assert s.boundary_samples == 10000
        assert s.bigcell_points == 50
        assert s.seed == 7

    def test_default_u1_valuation(self):
        """Test that the default U1 valuation is -3."""
        s = Settings()
        assert s.u1_valuation == -3

    def test_default_report_dir(self):
        """Test that default report_dir is Path('reports')."""
        s = Settings()
        assert isinstance(s.report_dir, Path)
        assert s.report_dir == Path("reports")

    def test_default_app_name(self):
        """Test that default app_name is set."""
        s = Settings()
        assert s.app_name == "g2cert - Split G2 Formula Certifier"

    def test_default_schema_and_log_level(self):
        """Test the schema version and log level defaults."""
        s = Settings()
        assert s.schema_version == "1.0"
        assert s.log_level == "INFO"


class TestGlobalSettings:
    """Tests for global settings instance."""

    def test_global_settings_is_settings_instance(self):
        """Test that global settings is a Settings instance."""
        assert isinstance(settings, Settings)

    def test_global_settings_has_workers(self):
        """Test that global settings has a worker count."""
        assert isinstance(settings.workers, int)


class TestSettingsConfiguration:
    """Tests for Settings configuration."""

    def test_settings_uses_pydantic_base_settings(self):
        """Test that Settings uses Pydantic BaseSettings."""
        from pydantic_settings import BaseSettings

        assert issubclass(Settings, BaseSettings)

    def test_model_config_env_file(self):
        """Test that model_config specifies the .env file and UTF-8."""
        config = Settings.model_config
        assert config["env_file"] == ".env"
        assert config["env_file_encoding"] == "utf-8"

    def test_environment_overrides_prime(self, monkeypatch):
        """Test that PRIME in the environment overrides the default."""
        monkeypatch.setenv("PRIME", "7")
        assert Settings().prime == 7


class TestSuiteConfig:
    """Tests for the settings-to-run-config bridge."""

    def test_suite_config_copies_fields(self):
        """Test that suite_config carries the run parameters."""
        config = Settings(prime=3, seed=11, samples=20).suite_config()
        assert isinstance(config, SuiteConfig)
        assert (config.prime, config.seed, config.samples) == (3, 11, 20)

    def test_model_copy_overrides(self):
        """Test that CLI-style overrides leave the original untouched."""
        base = Settings()
        run = base.model_copy(update={"kappa_min": 2, "kappa_max": 3})
        assert list(run.suite_config().kappa_range) == [2, 3]
        assert base.kappa_max == 6

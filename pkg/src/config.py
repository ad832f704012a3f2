"""Application configuration using environment variables."""

from pathlib import Path
from pydantic_settings import BaseSettings, SettingsConfigDict

from src.model.models import SuiteConfig


class Settings(BaseSettings):
    """Application settings loaded from environment variables."""

    # Valuation checks
    prime: int = 5
    kappa_min: int = 1
    kappa_max: int = 6
    u1_valuation: int = -3

    # Sampling
    samples: int = 1000
    boundary_samples: int = 10000
    bigcell_points: int = 50
    seed: int = 7
    workers: int = 4

    # Reports
    schema_version: str = "1.0"
    report_dir: Path = Path("reports")

    # Application
    app_name: str = "g2cert - Split G2 Formula Certifier"
    log_level: str = "INFO"

    model_config = SettingsConfigDict(
        env_file=".env", env_file_encoding="utf-8", case_sensitive=False, extra="ignore"
    )

    def suite_config(self) -> SuiteConfig:
        return SuiteConfig.model_validate(
            self.model_dump(include=set(SuiteConfig.model_fields))
        )


# Global settings instance
settings = Settings()

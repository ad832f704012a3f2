"""
Report models for certification runs.
"""

from enum import Enum
from typing import Any, List

from pydantic import BaseModel, Field, computed_field, field_validator
from sympy import isprime


class CheckStatus(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    SKIPPED = "skipped"


class CheckResult(BaseModel):
    check_id: str
    status: CheckStatus
    detail: str = ""
    artifacts: dict[str, Any] | None = None
    reproduce: str | None = None


class SuiteConfig(BaseModel):
    prime: int = 5
    kappa_min: int = Field(default=1, ge=1)
    kappa_max: int = Field(default=6, ge=1)
    samples: int = Field(default=1000, ge=1)
    boundary_samples: int = Field(default=10000, ge=1)
    bigcell_points: int = Field(default=50, ge=1)
    seed: int = 7
    workers: int = Field(default=4, ge=1)
    u1_valuation: int = -3

    model_config = {
        "json_schema_extra": {
            "examples": [
                {
                    "prime": 5,
                    "kappa_min": 1,
                    "kappa_max": 6,
                    "samples": 1000,
                    "boundary_samples": 10000,
                    "bigcell_points": 50,
                    "seed": 7,
                    "workers": 4,
                    "u1_valuation": -3,
                }
            ]
        }
    }

    @field_validator("prime")
    @classmethod
    def prime_must_be_prime(cls, value: int) -> int:
        if not isprime(value):
            raise ValueError(f"prime must be a prime number, got {value}")
        return value

    @property
    def kappa_range(self) -> range:
        return range(self.kappa_min, self.kappa_max + 1)


class Finding(BaseModel):
    """A printed formula or shape that differs from the derived one."""

    finding_id: str
    printed: str
    derived: str
    resolution: str


class SuiteReport(BaseModel):
    schema_version: str
    selector: str
    config: SuiteConfig
    results: List[CheckResult] = Field(default_factory=list)
    formulas: dict[str, Any] = Field(default_factory=dict)
    findings: List[Finding] = Field(default_factory=list)

    @computed_field
    @property
    def passed(self) -> int:
        return sum(1 for r in self.results if r.status is CheckStatus.PASS)

    @computed_field
    @property
    def failed(self) -> int:
        return sum(1 for r in self.results if r.status is CheckStatus.FAIL)

    @computed_field
    @property
    def skipped(self) -> int:
        return sum(1 for r in self.results if r.status is CheckStatus.SKIPPED)

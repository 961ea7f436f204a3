"""
Analytic Data Schemas
Quadrature parameters, compositions and BLER estimate records
"""

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from configs.settings import settings


class QuadratureConfig(BaseModel):
    """Complexity-accuracy parameters of the far-user series"""

    model_config = ConfigDict(frozen=True, extra="forbid")

    n_nodes: int = Field(default_factory=lambda: settings.QUAD_N, ge=1, description="Chebyshev nodes N")
    l_terms: int = Field(default_factory=lambda: settings.QUAD_L, ge=2, description="Series length L")

    @field_validator("l_terms")
    @classmethod
    def validate_even(cls, v):
        if v % 2:
            raise ValueError(f"Series length must be even, got {v}")
        return v


@dataclass(frozen=True)
class Composition:
    """Assignment of T rounds across N nodes with its multinomial weight"""
    parts: Tuple[int, ...]
    weight: int

    @property
    def rounds(self) -> int:
        return sum(self.parts)


class BlerMethod(str, Enum):
    """How a BLER value was obtained"""
    CLOSED_FORM = "closed_form"
    ASYMPTOTIC = "asymptotic"
    MONTE_CARLO = "monte_carlo"
    OMA_CLOSED_FORM = "oma_closed_form"


class BlerEstimate(BaseModel):
    """Average block error rate with provenance"""

    model_config = ConfigDict(frozen=True)

    value: float = Field(..., ge=0.0, le=1.0, description="Probability after clamping")
    method: BlerMethod
    std_err: Optional[float] = Field(None, ge=0.0, description="Monte Carlo standard error")
    raw_value: Optional[float] = Field(None, description="Value before clamping to [0, 1]")
    stage: Optional[str] = Field(None, description="11, 12, 22, the user index or 1_additive")

    @model_validator(mode="after")
    def check_std_err(self):
        is_mc = self.method == BlerMethod.MONTE_CARLO
        if is_mc != (self.std_err is not None):
            raise ValueError("std_err must be present exactly for Monte Carlo estimates")
        return self


class AnalyticReport(BaseModel):
    """Closed-form BLER of every SIC stage and both users"""

    eps11: BlerEstimate
    eps12: BlerEstimate
    eps22: BlerEstimate
    eps1: BlerEstimate
    eps2: BlerEstimate
    eps1_additive: BlerEstimate

    class Config:
        json_schema_extra = {
            "example": {
                "eps11": {"value": 0.0123, "method": "closed_form", "stage": "11"},
                "eps12": {"value": 0.0018, "method": "closed_form", "stage": "12"},
                "eps22": {"value": 0.0087, "method": "closed_form", "stage": "22"},
                "eps1": {"value": 0.0141, "method": "closed_form", "stage": "1"},
                "eps2": {"value": 0.0087, "method": "closed_form", "stage": "2"},
                "eps1_additive": {"value": 0.0141, "method": "closed_form", "stage": "1_additive"},
            }
        }

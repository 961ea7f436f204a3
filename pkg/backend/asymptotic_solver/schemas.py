"""
Solver Data Schemas
Reliability targets and solver outputs
"""

from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field

from configs.settings import settings


class GammaInverse(str, Enum):
    """Reading of Gamma(T) gamma^-1(T, .) in the blocklength equation"""
    REGULARIZED = "regularized"  # P^-1(T, eps): round-trips with the Gamma CDF
    LITERAL = "literal"  # Gamma(T) times the unregularized inverse

    @classmethod
    def resolve(cls, value: Optional[str]) -> "GammaInverse":
        return cls(value if value is not None else settings.GAMMA_INVERSE)


class ReliabilityTargets(BaseModel):
    """Per-user BLER targets, SIC split factor and residual tolerance"""

    model_config = ConfigDict(frozen=True, extra="forbid")

    eps1_req: float = Field(..., gt=0, lt=1, description="Near-user target BLER")
    eps2_req: float = Field(..., gt=0, lt=1, description="Far-user target BLER")
    delta: float = Field(default_factory=lambda: settings.DEFAULT_DELTA, gt=0, lt=1,
                         description="Split of the near-user budget between SIC stages")
    nu: float = Field(default_factory=lambda: settings.SOLVER_TOLERANCE, gt=0,
                      description="Residual tolerance")

    @property
    def near_own_target(self) -> float:
        """Budget of the near user's own-message stage, eps1 / (1 + delta)"""
        return self.eps1_req / (1.0 + self.delta)


class SolverOutput(BaseModel):
    """Power split and blocklength that meet both targets"""

    alpha1_star: float = Field(..., gt=0, lt=0.5)
    m_req_real: float = Field(..., ge=100.0, description="Required blocklength, real-valued")
    m_req_ceil: int = Field(..., ge=100, description="Required blocklength rounded up")
    iterations: int = Field(..., ge=0)
    residual: float
    bracket_width: float = Field(..., gt=0)
    gamma_inverse: GammaInverse


class BlocklengthComparison(BaseModel):
    """NOMA versus OMA required blocklength at one operating point"""

    rho_db: float
    eps2_target: float
    m_noma: float
    m_oma: float
    m_oma_user1: float
    m_oma_user2: float
    gap: float

    class Config:
        json_schema_extra = {
            "example": {
                "rho_db": 35.0,
                "eps2_target": 1e-5,
                "m_noma": 512.4,
                "m_oma": 556.8,
                "m_oma_user1": 260.9,
                "m_oma_user2": 295.9,
                "gap": 44.4,
            }
        }

"""
Monte Carlo Data Schemas
Seeded run parameters and per-stage estimates
"""

import math
from typing import List

from pydantic import BaseModel, ConfigDict, Field

from backend.analytic import BlerEstimate
from configs.settings import settings


class McConfig(BaseModel):
    """Seeded Monte Carlo run; results are a pure function of (seed, trials, batch)"""

    model_config = ConfigDict(frozen=True, extra="forbid")

    seed: int = Field(default_factory=lambda: settings.MC_SEED, ge=0, lt=2 ** 64)
    trials: int = Field(default_factory=lambda: settings.MC_TRIALS, ge=1)
    batch: int = Field(default_factory=lambda: settings.MC_BATCH, ge=1)

    @property
    def n_partitions(self) -> int:
        return math.ceil(self.trials / self.batch)

    def partition_sizes(self) -> List[int]:
        """Trial count of each partition; every partition but the last is full"""
        full, rest = divmod(self.trials, self.batch)
        return [self.batch] * full + ([rest] if rest else [])


class McReport(BaseModel):
    """Monte Carlo BLER of every SIC stage and both users"""

    eps11: BlerEstimate
    eps12: BlerEstimate
    eps22: BlerEstimate
    eps1: BlerEstimate
    eps2: BlerEstimate
    eps1_product: float = Field(..., ge=0.0, le=1.0,
                                description="eps12 + (1 - eps12) eps11 from the marginal averages")
    trials_used: int = Field(..., ge=1)

    @property
    def joint_product_gap(self) -> float:
        """Joint per-trial near-user BLER minus the product-of-averages surrogate"""
        return self.eps1.value - self.eps1_product


"""
Figure Data Schemas
Sweep axes, figure rows and validation results
"""

import math
from typing import List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from backend.model import RunConfig
from configs.settings import settings


class SweepSpec(BaseModel):
    """One swept variable over an inclusive arithmetic grid"""

    model_config = ConfigDict(frozen=True, extra="forbid")

    variable: Literal["rho_db", "m"]
    start: float
    stop: float
    step: float = Field(..., gt=0)
    fixed: RunConfig = Field(default_factory=RunConfig)

    @model_validator(mode="after")
    def check_grid(self):
        if not self.start < self.stop:
            raise ValueError(f"Sweep start {self.start} must be below stop {self.stop}")
        if self.count > settings.MAX_SWEEP_POINTS:
            raise ValueError(f"Sweep has {self.count} points, limit is {settings.MAX_SWEEP_POINTS}")
        return self

    @property
    def count(self) -> int:
        return int(math.floor((self.stop - self.start) / self.step + 1e-9)) + 1

    def points(self) -> List[float]:
        return [round(self.start + i * self.step, 12) for i in range(self.count)]

    @classmethod
    def parse(cls, variable: str, text: str, fixed: Optional[RunConfig] = None) -> "SweepSpec":
        """Build from a START:STOP:STEP string"""
        try:
            start, stop, step = (float(part) for part in text.split(":"))
        except ValueError as e:
            raise ValueError(f"Sweep must be START:STOP:STEP, got {text!r}") from e
        return cls(variable=variable, start=start, stop=stop, step=step, fixed=fixed or RunConfig())


class Figure1Row(BaseModel):
    """Average BLER against transmit SNR for one user and round count"""
    rho_db: float
    T: int
    user: int
    bler_analytic: Optional[float] = None
    bler_mc: Optional[float] = None
    mc_stderr: Optional[float] = None
    status: str = "ok"


class Figure2Row(BaseModel):
    """NOMA and OMA average BLER against blocklength"""
    m: float
    noma_u1: Optional[float] = None
    noma_u2: Optional[float] = None
    oma20_u1: Optional[float] = None
    oma20_u2: Optional[float] = None
    oma50_u1: Optional[float] = None
    oma50_u2: Optional[float] = None
    status: str = "ok"


class Figure3Row(BaseModel):
    """Required NOMA and OMA blocklength against transmit SNR"""
    rho_db: float
    eps2_target: float
    m_noma: Optional[float] = None
    m_oma: Optional[float] = None
    gap: Optional[float] = None
    alpha1_star: Optional[float] = None
    status: str = "ok"


class CriterionResult(BaseModel):
    """Outcome of one acceptance check"""
    number: int
    name: str
    passed: bool
    measured: str
    threshold: str
    details: List[str] = Field(default_factory=list)


class ValidationReport(BaseModel):
    """Ordered acceptance results; rendering carries no timings"""
    seed: int
    trials: int
    results: List[CriterionResult] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def render(self) -> str:
        lines = [
            f"# validation seed={self.seed} trials={self.trials}",
            "criterion,name,status,measured,threshold",
        ]
        for r in self.results:
            status = "PASS" if r.passed else "FAIL"
            lines.append(f"{r.number},{r.name},{status},{r.measured},{r.threshold}")
            lines.extend(f"#   {detail}" for detail in r.details)
        lines.append(f"# overall: {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines) + "\n"

"""
Model Data Schemas
Pydantic models for the physical scenario and finite-blocklength code parameters
"""

from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


MIN_BLOCKLENGTH = 100.0


class ChannelScenario(BaseModel):
    """Two-user downlink scenario without a power split"""

    model_config = ConfigDict(frozen=True, extra="forbid")

    rho: float = Field(..., gt=0, description="Transmit SNR P/sigma^2, linear")
    d1: float = Field(..., ge=0, description="Near-user distance in meters")
    d2: float = Field(..., ge=0, description="Far-user distance in meters")
    eta: float = Field(..., ge=0, description="Path-loss exponent")
    T: int = Field(..., ge=1, description="Maximum HARQ transmission rounds")

    @model_validator(mode="after")
    def check_user_ordering(self):
        if self.d1 > self.d2:
            raise ValueError(f"Near user must not be farther than far user (d1={self.d1}, d2={self.d2})")
        return self

    def mu(self, user: int) -> float:
        """Large-scale power gain 1 / (1 + d_user^eta)"""
        if user not in (1, 2):
            raise ValueError(f"User index must be 1 or 2, got {user}")
        distance = self.d1 if user == 1 else self.d2
        return 1.0 / (1.0 + distance ** self.eta)

    def with_power_split(self, alpha1: float) -> "SystemConfig":
        """Build the full system configuration for a near-user power fraction"""
        fields = self.model_dump(exclude={"alpha1"})
        return SystemConfig(**fields, alpha1=alpha1)


class SystemConfig(ChannelScenario):
    """Physical scenario including the NOMA power split"""

    alpha1: float = Field(..., gt=0, lt=0.5, description="Near-user power fraction")

    @property
    def alpha2(self) -> float:
        return 1.0 - self.alpha1

    @property
    def kappa(self) -> float:
        """Power ratio alpha2 / alpha1; per-round far SINR ceiling"""
        return self.alpha2 / self.alpha1

    @property
    def sinr_ceiling(self) -> float:
        """Almost-sure ceiling T * kappa of the accumulated far SINR"""
        return self.T * self.kappa

    def scenario(self) -> ChannelScenario:
        return ChannelScenario(**self.model_dump(exclude={"alpha1"}))


class CodingConfig(BaseModel):
    """Finite-blocklength code parameters shared by both users"""

    model_config = ConfigDict(frozen=True, extra="forbid")

    n1: int = Field(..., ge=1, description="Near-user information bits")
    n2: int = Field(..., ge=1, description="Far-user information bits")
    m: float = Field(..., ge=MIN_BLOCKLENGTH, description="Blocklength in channel uses")

    def bits(self, user: int) -> int:
        if user not in (1, 2):
            raise ValueError(f"User index must be 1 or 2, got {user}")
        return self.n1 if user == 1 else self.n2


class QLinearization(BaseModel):
    """Linearized Q-function BLER constants for one user's rate"""

    model_config = ConfigDict(frozen=True)

    lam: float = Field(..., gt=0, description="Slope of the linear ramp")
    theta: float = Field(..., gt=0, description="Midpoint SINR 2^(N/M) - 1")
    upsilon: float = Field(..., description="Lower knee theta - 1/(2 lambda)")
    tau: float = Field(..., description="Upper knee theta + 1/(2 lambda)")

    @model_validator(mode="after")
    def check_knees(self):
        if not self.upsilon < self.theta < self.tau:
            raise ValueError("Linearization knees must satisfy upsilon < theta < tau")
        return self

    @property
    def width(self) -> float:
        return self.tau - self.upsilon


class RunConfig(BaseModel):
    """
    Serializable run configuration document

    Keys mirror the JSON config file accepted by the command line and
    the HTTP surface. Unknown keys are rejected.
    """

    model_config = ConfigDict(
        extra="forbid",
        json_schema_extra={
            "example": {
                "rho_db": 20.0, "alpha1": 0.1, "d1": 3.0, "d2": 7.0, "eta": 2.0, "T": 2,
                "n1": 160, "n2": 160, "m": 200, "quad_n": 30, "quad_l": 18,
                "seed": 20240917, "trials": 1000000,
            }
        },
    )

    rho_db: float = Field(20.0, description="Transmit SNR in dB")
    alpha1: float = Field(0.1, gt=0, lt=0.5, description="Near-user power fraction")
    d1: float = Field(3.0, ge=0, description="Near-user distance in meters")
    d2: float = Field(7.0, ge=0, description="Far-user distance in meters")
    eta: float = Field(2.0, ge=0, description="Path-loss exponent")
    T: int = Field(2, ge=1, description="Maximum HARQ rounds")
    n1: int = Field(160, ge=1, description="Near-user information bits")
    n2: int = Field(160, ge=1, description="Far-user information bits")
    m: float = Field(200.0, ge=MIN_BLOCKLENGTH, description="Blocklength")
    quad_n: int = Field(30, ge=1, description="Chebyshev node count N")
    quad_l: int = Field(18, ge=2, description="Series length L (even)")
    seed: int = Field(20240917, ge=0, lt=2 ** 64, description="Monte Carlo seed")
    trials: int = Field(1_000_000, ge=1, description="Monte Carlo trials")

    @field_validator("quad_l")
    @classmethod
    def validate_even_series(cls, v):
        if v % 2:
            raise ValueError(f"quad_l must be even, got {v}")
        return v

    def system(self) -> SystemConfig:
        return SystemConfig(
            rho=10.0 ** (self.rho_db / 10.0),
            alpha1=self.alpha1,
            d1=self.d1,
            d2=self.d2,
            eta=self.eta,
            T=self.T,
        )

    def coding(self) -> CodingConfig:
        return CodingConfig(n1=self.n1, n2=self.n2, m=self.m)


class SolveConfig(RunConfig):
    """Run configuration plus the solver reliability inputs"""

    eps1_req: float = Field(..., gt=0, lt=1, description="Near-user BLER target")
    eps2_req: float = Field(..., gt=0, lt=1, description="Far-user BLER target")
    delta: float = Field(0.1, gt=0, lt=1, description="SIC-stage split factor")
    nu: float = Field(..., gt=0, description="Residual tolerance")
    gamma_inverse: Optional[Literal["regularized", "literal"]] = Field(None, description="regularized | literal")

"""
NomaHarq Configuration Settings
"""

from typing import Optional
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Toolkit settings and numerical defaults"""

    model_config = SettingsConfigDict(env_file=".env", case_sensitive=True)

    # Application
    APP_NAME: str = "NomaHarq"
    APP_VERSION: str = "1.0.0"

    # HTTP surface
    HOST: str = "127.0.0.1"
    PORT: int = 8000

    # Quadrature (complexity-accuracy trade-off)
    QUAD_N: int = 30
    QUAD_L: int = 18
    COMPOSITION_CAP: int = 10_000_000

    # Clamping diagnostics: pre-clamp excess tolerated before a warning is logged
    CLAMP_TOLERANCE: float = 1e-6

    # Power-split solver
    SOLVER_MAX_ITERATIONS: int = 200
    SOLVER_TOLERANCE: float = 1e-7
    DEFAULT_DELTA: float = 0.1
    GAMMA_INVERSE: str = "regularized"  # regularized | literal

    # Monte Carlo
    MC_SEED: int = 20240917
    MC_TRIALS: int = 1_000_000
    MC_BATCH: int = 100_000

    # Sweeps
    SWEEP_WORKERS: int = 4
    MAX_SWEEP_POINTS: int = 10_000

    # Validation harness tolerances
    FAR_SERIES_RTOL: float = 1e-9
    NEAR_CLOSED_FORM_RTOL: float = 1e-10
    ANTIDERIVATIVE_RTOL: float = 1e-5
    MC_RELATIVE_SLACK: float = 0.2
    MC_MIN_ESTIMATE: float = 1e-4
    ROUND_TRIP_RTOL: float = 1e-10
    VALIDATION_CONFIGS: int = 10

    # Logging
    LOG_LEVEL: str = "INFO"
    LOG_FILE: Optional[str] = None


# Global settings instance
settings = Settings()

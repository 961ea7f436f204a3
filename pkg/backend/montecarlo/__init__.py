"""
Monte Carlo Module
Seeded simulation oracle for every closed-form BLER
"""

from .schemas import McConfig, McReport
from .simulator import (
    RunningMoments,
    SimulationError,
    empirical_cdf,
    partition_streams,
    sample_accumulated_sinr,
    sample_channel_power,
    simulate_avg_bler,
)

__all__ = [
    "McConfig",
    "McReport",
    "RunningMoments",
    "SimulationError",
    "empirical_cdf",
    "partition_streams",
    "sample_accumulated_sinr",
    "sample_channel_power",
    "simulate_avg_bler",
]

"""
Model Module
Physical scenario, code parameters and the finite-blocklength BLER
"""

from .bler import (
    ModelValidityError,
    accumulate_sinr,
    channel_dispersion,
    db_to_linear,
    far_user_feasible,
    instantaneous_bler,
    linear_to_db,
    linearize,
    linearized_bler,
    mu,
)
from .schemas import (
    MIN_BLOCKLENGTH,
    ChannelScenario,
    CodingConfig,
    QLinearization,
    RunConfig,
    SolveConfig,
    SystemConfig,
)

__all__ = [
    "MIN_BLOCKLENGTH",
    "ChannelScenario",
    "CodingConfig",
    "ModelValidityError",
    "QLinearization",
    "RunConfig",
    "SolveConfig",
    "SystemConfig",
    "accumulate_sinr",
    "channel_dispersion",
    "db_to_linear",
    "far_user_feasible",
    "instantaneous_bler",
    "linear_to_db",
    "linearize",
    "linearized_bler",
    "mu",
]

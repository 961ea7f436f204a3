"""
High-SNR Asymptotic BLER
Midpoint evaluation of the SINR CDF over the linearization window
"""

import logging

from backend.analytic import (
    BlerEstimate,
    BlerMethod,
    FeasibilityError,
    QuadratureConfig,
    cdf_near_sinr,
    clamp_estimate,
    far_cdf_series,
)
from backend.model import CodingConfig, SystemConfig, linearize

logger = logging.getLogger(__name__)

STAGES = ("11", "12", "22")


def asymptotic_bler(
    config: SystemConfig,
    coding: CodingConfig,
    stage: str,
    quad: QuadratureConfig,
) -> BlerEstimate:
    """
    Asymptotic BLER of one SIC stage

    The window average lambda * integral of F over [upsilon, tau] collapses
    to F(theta) once F is close to linear across the window.

    Args:
        config: System configuration
        coding: Code parameters
        stage: "11" (near user, own message), "12" (near user, far message)
            or "22" (far user)
        quad: Quadrature parameters for the far-user stages

    Raises:
        FeasibilityError: If a far-message stage has theta2 >= T * kappa
    """
    stage = str(stage)
    if stage not in STAGES:
        raise ValueError(f"Stage must be one of {STAGES}, got {stage}")

    if stage == "11":
        theta1 = linearize(coding.n1, coding.m).theta
        return clamp_estimate(cdf_near_sinr(theta1, config), BlerMethod.ASYMPTOTIC, stage=stage)

    theta2 = linearize(coding.n2, coding.m).theta
    if theta2 >= config.sinr_ceiling:
        raise FeasibilityError(
            f"Far user is undecodable: theta2={theta2:.6g} >= T*kappa={config.sinr_ceiling:.6g}"
        )
    raw = far_cdf_series(theta2, config, quad, user=int(stage[0]))
    return clamp_estimate(raw, BlerMethod.ASYMPTOTIC, stage=stage)


def asymptotic_user_bler(
    config: SystemConfig,
    coding: CodingConfig,
    quad: QuadratureConfig,
    user: int,
) -> BlerEstimate:
    """Asymptotic user BLER: eps12 + eps11 for the near user, eps22 for the far user"""
    if user == 2:
        return asymptotic_bler(config, coding, "22", quad).model_copy(update={"stage": "2"})
    if user != 1:
        raise ValueError(f"User index must be 1 or 2, got {user}")

    eps12 = asymptotic_bler(config, coding, "12", quad)
    eps11 = asymptotic_bler(config, coding, "11", quad)
    return clamp_estimate(eps12.value + eps11.value, BlerMethod.ASYMPTOTIC, stage="1")

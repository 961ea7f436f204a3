"""
User-Level Combination
Combines SIC-stage closed forms into per-user average BLERs
"""

import logging

from backend.analytic.clamping import clamp_estimate
from backend.analytic.far_user import avg_bler_far_decode
from backend.analytic.near_user import avg_bler_near_own
from backend.analytic.schemas import AnalyticReport, BlerEstimate, BlerMethod, QuadratureConfig
from backend.model import CodingConfig, SystemConfig

logger = logging.getLogger(__name__)

# the plain sum may exceed 1 at low SNR
ADDITIVE_STAGE = "1_additive"


def combine_sic(eps12: float, eps11: float) -> float:
    """Near-user failure: first SIC stage fails, or it succeeds and own decoding fails"""
    return eps12 + (1.0 - eps12) * eps11


def avg_bler_user(
    config: SystemConfig,
    coding: CodingConfig,
    quad: QuadratureConfig,
    user: int,
) -> BlerEstimate:
    """
    Average BLER of a user

    User 2 is the far-decode stage directly. User 1 combines the stage
    averages as eps12 + (1 - eps12) eps11, which ignores their correlation
    through the shared channel.
    """
    if user == 2:
        eps22 = avg_bler_far_decode(config, coding, quad, decoder=2)
        return eps22.model_copy(update={"stage": "2"})
    if user != 1:
        raise ValueError(f"User index must be 1 or 2, got {user}")

    eps12 = avg_bler_far_decode(config, coding, quad, decoder=1)
    eps11 = avg_bler_near_own(config, coding)
    return clamp_estimate(combine_sic(eps12.value, eps11.value), BlerMethod.CLOSED_FORM, stage="1")


def avg_bler_user_additive(
    config: SystemConfig,
    coding: CodingConfig,
    quad: QuadratureConfig,
    user: int = 1,
) -> BlerEstimate:
    """Near-user BLER as the plain sum eps12 + eps11 (high-SNR decomposition)"""
    if user != 1:
        return avg_bler_user(config, coding, quad, user)
    eps12 = avg_bler_far_decode(config, coding, quad, decoder=1)
    eps11 = avg_bler_near_own(config, coding)
    return clamp_estimate(eps12.value + eps11.value, BlerMethod.CLOSED_FORM, stage=ADDITIVE_STAGE)


def user_bler_summary(config: SystemConfig, coding: CodingConfig, quad: QuadratureConfig) -> AnalyticReport:
    """Every closed-form stage and user BLER for one operating point"""
    eps11 = avg_bler_near_own(config, coding)
    eps12 = avg_bler_far_decode(config, coding, quad, decoder=1)
    eps22 = avg_bler_far_decode(config, coding, quad, decoder=2)

    eps1 = clamp_estimate(combine_sic(eps12.value, eps11.value), BlerMethod.CLOSED_FORM, stage="1")
    additive = clamp_estimate(eps12.value + eps11.value, BlerMethod.CLOSED_FORM, stage=ADDITIVE_STAGE)

    logger.debug(
        f"rho={config.rho:.4g}, T={config.T}: eps11={eps11.value:.4e}, "
        f"eps12={eps12.value:.4e}, eps22={eps22.value:.4e}"
    )
    return AnalyticReport(
        eps11=eps11,
        eps12=eps12,
        eps22=eps22,
        eps1=eps1,
        eps2=eps22.model_copy(update={"stage": "2"}),
        eps1_additive=additive,
    )

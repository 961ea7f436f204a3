"""
Required Blocklength
Inverts the near-user Gamma CDF for the blocklength meeting a BLER target
"""

import logging
import math
from typing import Optional, Tuple

from backend.asymptotic_solver.schemas import GammaInverse, ReliabilityTargets
from backend.model import MIN_BLOCKLENGTH, ChannelScenario, SystemConfig
from backend.specfun import SpecialFunctionDomainError, inverse_lower_gamma, inverse_regularized_lower_gamma

logger = logging.getLogger(__name__)


class BlocklengthRegimeError(ValueError):
    """Raised when the required blocklength falls below the normal-approximation regime"""
    pass


class GammaInversionError(ArithmeticError):
    """Raised when the incomplete Gamma inversion fails"""
    pass


def gamma_threshold(shape: int, target: float, gamma_inverse: Optional[str] = None) -> float:
    """
    Normalized SNR threshold x* with F(x*) = target for a unit-scale Gamma(shape)

    The literal reading returns Gamma(T) gamma^-1(T, target) instead of
    P^-1(T, target); both coincide for T = 1.
    """
    reading = GammaInverse.resolve(gamma_inverse)
    try:
        if reading is GammaInverse.REGULARIZED:
            return inverse_regularized_lower_gamma(shape, target)
        return math.factorial(shape - 1) * inverse_lower_gamma(shape, target)
    except (SpecialFunctionDomainError, RuntimeError, ValueError) as e:
        raise GammaInversionError(f"Cannot invert the Gamma CDF at T={shape}, target={target}: {e}") from e


def blocklength_for_scale(
    n_bits: int,
    scale: float,
    shape: int,
    target: float,
    gamma_inverse: Optional[str] = None,
) -> float:
    """Blocklength M = N / log2(1 + scale * x*) whose midpoint SINR meets the target"""
    threshold = scale * gamma_threshold(shape, target, gamma_inverse)
    return n_bits / (math.log1p(threshold) / math.log(2.0))


def _check_regime(m: float, what: str) -> float:
    if m < MIN_BLOCKLENGTH:
        raise BlocklengthRegimeError(
            f"{what} blocklength {m:.2f} is below {MIN_BLOCKLENGTH:g}; the target is too loose "
            "for the finite-blocklength approximation"
        )
    return m


def required_blocklength_near(
    config: SystemConfig,
    n1: int,
    targets: ReliabilityTargets,
    gamma_inverse: Optional[str] = None,
    check_regime: bool = True,
) -> float:
    """
    Smallest real blocklength meeting the near user's own-message budget

    Solves F_Z(theta1) = eps1 / (1 + delta) with Z ~ Gamma(T, rho alpha1 mu1).

    Raises:
        BlocklengthRegimeError: If M < 100 and ``check_regime`` is set
        GammaInversionError: If the inversion fails
    """
    scale = config.rho * config.alpha1 * config.mu(1)
    m = blocklength_for_scale(n1, scale, config.T, targets.near_own_target, gamma_inverse)
    return _check_regime(m, "Near-user") if check_regime else m


def oma_user_blocklengths(
    scenario: ChannelScenario,
    n1: int,
    n2: int,
    targets: ReliabilityTargets,
    gamma_inverse: Optional[str] = None,
) -> Tuple[float, float]:
    """Per-user OMA blocklengths at full power; user 1 keeps the (1 + delta) budget split"""
    m1 = blocklength_for_scale(
        n1, scenario.rho * scenario.mu(1), scenario.T, targets.near_own_target, gamma_inverse
    )
    m2 = blocklength_for_scale(n2, scenario.rho * scenario.mu(2), scenario.T, targets.eps2_req, gamma_inverse)
    for user, m in ((1, m1), (2, m2)):
        if m < MIN_BLOCKLENGTH:
            logger.warning(f"OMA user {user} blocklength {m:.2f} is below {MIN_BLOCKLENGTH:g}")
    return m1, m2


def oma_required_blocklength(
    scenario: ChannelScenario,
    n1: int,
    n2: int,
    targets: ReliabilityTargets,
    gamma_inverse: Optional[str] = None,
) -> float:
    """
    Total OMA blocklength M1 + M2

    Raises:
        BlocklengthRegimeError: If the total is below 100
    """
    m1, m2 = oma_user_blocklengths(scenario, n1, n2, targets, gamma_inverse)
    return _check_regime(m1 + m2, "OMA")

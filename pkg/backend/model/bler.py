"""
Finite-Blocklength BLER Model
Instantaneous block error rate, its linearization and HARQ-CC SINR accumulation
"""

import logging
import math
from typing import Sequence, Union

import numpy as np

from backend.model.schemas import MIN_BLOCKLENGTH, CodingConfig, QLinearization, SystemConfig
from backend.specfun import q_function

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]

LOG2_E = 1.0 / math.log(2.0)


class ModelValidityError(ValueError):
    """Raised when inputs leave the regime the BLER model is defined on"""
    pass


def mu(config: SystemConfig, user: int) -> float:
    """Large-scale power gain 1 / (1 + d_user^eta) of a user"""
    return config.mu(user)


def db_to_linear(db: ArrayLike) -> ArrayLike:
    """Convert decibels to a linear power ratio"""
    result = np.power(10.0, np.asarray(db, dtype=float) / 10.0)
    return float(result) if np.ndim(result) == 0 else result


def linear_to_db(value: ArrayLike) -> ArrayLike:
    """Convert a strictly positive linear power ratio to decibels"""
    arr = np.asarray(value, dtype=float)
    if np.any(~(arr > 0)):
        raise ModelValidityError(f"Linear power ratio must be positive, got {value}")
    result = 10.0 * np.log10(arr)
    return float(result) if np.ndim(result) == 0 else result


def linearize(n: int, m: float) -> QLinearization:
    """
    Linearize the Q-function BLER around its midpoint SINR

    Args:
        n: Information bits, n >= 1
        m: Blocklength in channel uses, m >= 100

    Returns:
        QLinearization with slope lambda, midpoint theta and knees upsilon, tau

    Raises:
        ModelValidityError: If the blocklength is outside the normal-approximation regime
    """
    if n < 1:
        raise ModelValidityError(f"Information bits must be >= 1, got {n}")
    if m < MIN_BLOCKLENGTH:
        raise ModelValidityError(
            f"Blocklength {m} is below {MIN_BLOCKLENGTH:g}; normal approximation does not hold"
        )

    rate = n / m
    theta = math.expm1(rate * math.log(2.0))
    lam = math.sqrt(m / (2.0 * math.pi * math.expm1(2.0 * rate * math.log(2.0))))
    half_width = 1.0 / (2.0 * lam)
    return QLinearization(lam=lam, theta=theta, upsilon=theta - half_width, tau=theta + half_width)


def channel_dispersion(gamma: ArrayLike) -> ArrayLike:
    """Channel dispersion v = (log2 e)^2 (1 - 1/(1+gamma)^2)"""
    g = np.asarray(gamma, dtype=float)
    return LOG2_E ** 2 * (1.0 - 1.0 / (1.0 + g) ** 2)


def instantaneous_bler(gamma: ArrayLike, n: int, m: float) -> ArrayLike:
    """
    Normal-approximation block error rate at a given SINR

    Args:
        gamma: Received SINR, nonnegative (scalar or array)
        n: Information bits
        m: Blocklength

    Returns:
        Q((log2(1+gamma) - n/m) / sqrt(v/m)); exactly 1 where gamma = 0
    """
    g = np.asarray(gamma, dtype=float)
    if np.any(g < 0):
        raise ModelValidityError(f"SINR must be nonnegative, got {gamma}")

    dispersion = channel_dispersion(g)
    positive = dispersion > 0
    with np.errstate(divide="ignore", invalid="ignore"):
        arg = (np.log1p(g) * LOG2_E - n / m) / np.sqrt(dispersion / m)
    # Vanishing dispersion with a negative numerator is the Q(-inf) limit
    result = np.where(positive, q_function(np.where(positive, arg, 0.0)), 1.0)
    return float(result) if np.ndim(result) == 0 else result


def linearized_bler(gamma: ArrayLike, lin: QLinearization) -> ArrayLike:
    """Piecewise-linear BLER: 1 below upsilon, 0 above tau, ramp 1/2 - lambda (gamma - theta) between"""
    g = np.asarray(gamma, dtype=float)
    result = np.clip(0.5 - lin.lam * (g - lin.theta), 0.0, 1.0)
    return float(result) if np.ndim(result) == 0 else result


def accumulate_sinr(per_round: Sequence[float]) -> float:
    """
    Chase-combined SINR: maximum ratio combining adds per-round SINRs

    Raises:
        ModelValidityError: If no rounds are given or any SINR is negative
    """
    values = list(per_round)
    if not values:
        raise ModelValidityError("At least one transmission round is required")
    if any(v < 0 for v in values):
        raise ModelValidityError(f"Per-round SINRs must be nonnegative, got {values}")
    return math.fsum(values)


def far_user_feasible(config: SystemConfig, coding: CodingConfig) -> bool:
    """True when the far user's midpoint SINR lies below the accumulated ceiling T * kappa"""
    theta2 = linearize(coding.n2, coding.m).theta
    return theta2 < config.sinr_ceiling

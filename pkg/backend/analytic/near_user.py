"""
Near-User Closed Forms
Gamma-distributed accumulated SNR, its antiderivative and the OMA baseline
"""

import logging
from typing import Union

import numpy as np
from scipy import special

from backend.analytic.clamping import clamp_estimate
from backend.analytic.schemas import BlerEstimate, BlerMethod
from backend.model import ChannelScenario, CodingConfig, SystemConfig, linearize
from backend.specfun import SpecialFunctionDomainError, regularized_lower_gamma

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]


def near_gamma_scale(config: SystemConfig) -> float:
    """Per-round mean SNR rho alpha1 mu1 after interference cancellation"""
    return config.rho * config.alpha1 * config.mu(1)


def gamma_cdf(r: ArrayLike, shape: int, scale: float) -> ArrayLike:
    """CDF of a Gamma(shape, scale) sum of exponential per-round SNRs"""
    arr = np.asarray(r, dtype=float)
    if np.any(arr < 0):
        raise SpecialFunctionDomainError(f"SNR must be nonnegative, got {r}")
    return regularized_lower_gamma(shape, arr / scale)


def gamma_cdf_antiderivative(x: ArrayLike, shape: int, scale: float) -> ArrayLike:
    """
    Integral of the Gamma CDF from 0 to x

    (1/Gamma(T)) [x gamma(T, x/s) - s gamma(T+1, x/s)], written with
    regularized incomplete Gammas as x P(T, x/s) - s T P(T+1, x/s).
    """
    arr = np.asarray(x, dtype=float)
    if np.any(arr < 0):
        raise SpecialFunctionDomainError(f"Antiderivative requires x >= 0, got {x}")
    z = arr / scale
    result = arr * special.gammainc(shape, z) - scale * shape * special.gammainc(shape + 1, z)
    return float(result) if np.ndim(result) == 0 else result


def cdf_near_sinr(r: ArrayLike, config: SystemConfig) -> ArrayLike:
    """CDF of the near user's accumulated own-message SNR"""
    return gamma_cdf(r, config.T, near_gamma_scale(config))


def upsilon_fn(x: ArrayLike, config: SystemConfig) -> ArrayLike:
    """Antiderivative of cdf_near_sinr, zero at x = 0"""
    return gamma_cdf_antiderivative(x, config.T, near_gamma_scale(config))


def _window_average(n_bits: int, m: float, shape: int, scale: float) -> float:
    lin = linearize(n_bits, m)
    lower = max(lin.upsilon, 0.0)
    upper = gamma_cdf_antiderivative(lin.tau, shape, scale)
    return lin.lam * (upper - gamma_cdf_antiderivative(lower, shape, scale))


def avg_bler_near_own(config: SystemConfig, coding: CodingConfig) -> BlerEstimate:
    """Average BLER of the near user decoding its own message after SIC"""
    raw = _window_average(coding.n1, coding.m, config.T, near_gamma_scale(config))
    return clamp_estimate(raw, BlerMethod.CLOSED_FORM, stage="11")


def avg_bler_oma(scenario: ChannelScenario, n_bits: int, m_share: float, user: int) -> BlerEstimate:
    """
    Average BLER of one user under OMA

    The user transmits at full power over its own blocklength share, so the
    near-user closed form applies with alpha1 = 1 and the user's own mu.

    Raises:
        ModelValidityError: If the share is below 100 channel uses
    """
    scale = scenario.rho * scenario.mu(user)
    raw = _window_average(n_bits, m_share, scenario.T, scale)
    return clamp_estimate(raw, BlerMethod.OMA_CLOSED_FORM, stage=str(user))

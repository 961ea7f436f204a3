"""
Far-User Closed Forms
CDF of the accumulated far-message SINR and its average BLER
"""

import logging
import math
import warnings
from functools import lru_cache
from typing import NamedTuple, Optional, Sequence, Union

import numpy as np

from backend.analytic.clamping import NumericalRegimeError, clamp_estimate
from backend.analytic.quadrature import chebyshev_nodes, enumerate_compositions, omega_fractions
from backend.analytic.schemas import BlerEstimate, BlerMethod, Composition, QuadratureConfig
from backend.analytic.series_kernel import SeriesKernel, series_kernel
from backend.model import CodingConfig, SystemConfig, linearize
from backend.specfun import SpecialFunctionDomainError, exp_integral_e1

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]

LN2 = math.log(2.0)
MIN_DENOMINATOR = 1e-12


class FeasibilityError(ValueError):
    """Raised when the far user's midpoint SINR is not below the ceiling T * kappa"""
    pass


class ApproximationRangeWarning(UserWarning):
    """Emitted when the far-user series is evaluated outside (0, T * kappa)"""
    pass


def _denominator(a: ArrayLike, config: SystemConfig) -> np.ndarray:
    d = 2.0 * config.alpha2 - config.alpha1 * config.kappa * (np.asarray(a, dtype=float) + 1.0)
    if np.any(d < MIN_DENOMINATOR):
        raise NumericalRegimeError(f"Node too close to 1: denominator {np.min(d):.3e}")
    return d


def psi(a: ArrayLike, config: SystemConfig, user: int) -> ArrayLike:
    """
    Per-node factor sqrt(1-a^2) / D^2 * exp(-2 alpha2 / (mu rho alpha1 D))

    D = 2 alpha2 - alpha1 kappa (a + 1). Underflows to 0 at low SNR; the
    series itself uses the rescaled form from log_psi_scaled.

    Raises:
        NumericalRegimeError: If D falls below 1e-12
    """
    a = np.asarray(a, dtype=float)
    d = _denominator(a, config)
    mrho = config.mu(user) * config.rho
    result = np.sqrt(1.0 - a ** 2) / d ** 2 * np.exp(-2.0 * config.alpha2 / (mrho * config.alpha1 * d))
    return float(result) if np.ndim(result) == 0 else result


def log_psi_scaled(a: ArrayLike, config: SystemConfig, user: int) -> np.ndarray:
    """log of psi times e^(1/(mu rho alpha1)), the exponential of the prefactor folded in"""
    a = np.asarray(a, dtype=float)
    d = _denominator(a, config)
    mrho = config.mu(user) * config.rho
    return 0.5 * np.log1p(-a ** 2) - 2.0 * np.log(d) - config.kappa * (a + 1.0) / (mrho * d)


def prefactor_c(config: SystemConfig, quad: QuadratureConfig, user: int) -> float:
    """Series prefactor c = (2 pi kappa alpha2 / (N mu rho)) e^(1/(mu rho alpha1)); may be +inf"""
    mrho = config.mu(user) * config.rho
    base = 2.0 * math.pi * config.kappa * config.alpha2 / (quad.n_nodes * mrho)
    try:
        return base * math.exp(1.0 / (mrho * config.alpha1))
    except OverflowError:
        return math.inf


def s_kn(k: int, config: SystemConfig, comp: Composition, nodes: Sequence[float]) -> float:
    """Exponential-integral scale S = (k kappa ln2 / 2) sum p_n (a_n + 1)"""
    if k < 1:
        raise ValueError(f"Series index must be >= 1, got {k}")
    parts = np.asarray(comp.parts, dtype=float)
    shifted = np.asarray(nodes, dtype=float) + 1.0
    return k * config.kappa * LN2 / 2.0 * math.fsum(parts * shifted)


class FarSeriesTable(NamedTuple):
    """Per-composition weights c^T Lambda prod Psi^p and unit scales S_1"""
    weights: np.ndarray
    s_unit: np.ndarray


@lru_cache(maxsize=64)
def far_series_table(config: SystemConfig, quad: QuadratureConfig, user: int) -> FarSeriesTable:
    """Composition table of the far-message series for the given decoding user"""
    nodes = chebyshev_nodes(quad.n_nodes)
    compositions = enumerate_compositions(config.T, quad.n_nodes)
    parts = np.array([c.parts for c in compositions], dtype=float)
    log_lambda = np.array([math.log(c.weight) for c in compositions])

    mrho = config.mu(user) * config.rho
    log_c = math.log(2.0 * math.pi * config.kappa * config.alpha2 / (quad.n_nodes * mrho))

    log_weights = config.T * log_c + log_lambda + parts @ log_psi_scaled(nodes, config, user)
    weights = np.exp(log_weights)
    s_unit = config.kappa * LN2 / 2.0 * (parts @ (nodes + 1.0))

    weights.setflags(write=False)
    s_unit.setflags(write=False)
    logger.debug(
        f"Far series table: user={user}, T={config.T}, N={quad.n_nodes}, "
        f"{len(compositions)} compositions"
    )
    return FarSeriesTable(weights=weights, s_unit=s_unit)


def _kernel(quad: QuadratureConfig, omega: Optional[Sequence[float]]) -> SeriesKernel:
    if omega is None:
        return series_kernel(omega_fractions(quad.l_terms))
    coefficients = tuple(omega)
    if len(coefficients) != quad.l_terms:
        raise ValueError(f"Expected {quad.l_terms} series weights, got {len(coefficients)}")
    return series_kernel(coefficients)


def far_cdf_series(r: float, config: SystemConfig, quad: QuadratureConfig, user: int = 2) -> float:
    """
    Raw far-message series value at SINR r, before clamping

    Raises:
        SpecialFunctionDomainError: If r <= 0
    """
    if not r > 0:
        raise SpecialFunctionDomainError(f"Far-user CDF requires r > 0, got {r}")
    if r >= config.sinr_ceiling:
        warnings.warn(
            f"r={r:.6g} is at or above the ceiling T*kappa={config.sinr_ceiling:.6g}; "
            "the series diverges there",
            ApproximationRangeWarning,
            stacklevel=2,
        )

    table = far_series_table(config, quad, user)
    kernel = _kernel(quad, None)
    return LN2 * math.fsum(table.weights * kernel.g(table.s_unit / r))


class FarCdfValue(NamedTuple):
    """Clamped far-user CDF with the validity flag of its argument"""
    value: float
    raw: float
    in_range: bool


def far_cdf_with_validity(r: float, config: SystemConfig, quad: QuadratureConfig, user: int = 2) -> FarCdfValue:
    """Far-user CDF at r, flagged out of range when r >= T * kappa"""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ApproximationRangeWarning)
        raw = far_cdf_series(r, config, quad, user)
    return FarCdfValue(value=min(max(raw, 0.0), 1.0), raw=raw, in_range=r < config.sinr_ceiling)


def cdf_far_sinr(r: float, config: SystemConfig, quad: QuadratureConfig, user: int = 2) -> float:
    """CDF of the accumulated far-message SINR seen by ``user``, clamped to [0, 1]"""
    raw = far_cdf_series(r, config, quad, user)
    return min(max(raw, 0.0), 1.0)


def omega_fn(x: float, y: ArrayLike) -> ArrayLike:
    """
    Antiderivative in x of E1(y/x) up to sign: x e^(-y/x) - (x+y) E1(y/x)

    Raises:
        SpecialFunctionDomainError: If x or any y is not strictly positive
    """
    y = np.asarray(y, dtype=float)
    if not x > 0 or np.any(~(y > 0)):
        raise SpecialFunctionDomainError(f"Omega requires x > 0 and y > 0, got x={x}")
    ratio = y / x
    result = x * np.exp(-ratio) - (x + y) * exp_integral_e1(ratio)
    return float(result) if np.ndim(result) == 0 else result


def _window_term(x: float, s_unit: np.ndarray, kernel: SeriesKernel) -> np.ndarray:
    # sum_k omega_k Omega(x, k S) = x H(S / x); the integrand vanishes for x <= 0
    if x <= 0:
        return np.zeros_like(s_unit)
    return x * kernel.h(s_unit / x)


def avg_bler_far_decode(
    config: SystemConfig,
    coding: CodingConfig,
    quad: QuadratureConfig,
    decoder: int = 2,
    omega: Optional[Sequence[float]] = None,
) -> BlerEstimate:
    """
    Average BLER of decoding the far user's message

    Integrates the series term by term over the far user's linearization
    window: lambda2 c^T sum Lambda prod Psi^p sum_k omega_k ln2
    [Omega(upsilon2, S_k) - Omega(tau2, S_k)].

    Args:
        config: System configuration
        coding: Code parameters; the far user's rate sets the window
        quad: Quadrature parameters
        decoder: 1 for the near user's SIC stage, 2 for the far user itself
        omega: Optional replacement series weights

    Returns:
        BlerEstimate tagged with stage "12" or "22"

    Raises:
        FeasibilityError: If theta2 >= T * kappa
    """
    if decoder not in (1, 2):
        raise ValueError(f"Decoder must be 1 or 2, got {decoder}")
    lin = linearize(coding.n2, coding.m)
    ceiling = config.sinr_ceiling
    if lin.theta >= ceiling:
        raise FeasibilityError(
            f"Far user is undecodable: theta2={lin.theta:.6g} >= T*kappa={ceiling:.6g}"
        )
    if lin.tau >= ceiling:
        warnings.warn(
            f"Upper knee tau2={lin.tau:.6g} reaches T*kappa={ceiling:.6g}",
            ApproximationRangeWarning,
            stacklevel=2,
        )

    table = far_series_table(config, quad, decoder)
    kernel = _kernel(quad, omega)
    window = _window_term(lin.upsilon, table.s_unit, kernel) - _window_term(lin.tau, table.s_unit, kernel)

    raw = lin.lam * LN2 * math.fsum(table.weights * window)
    return clamp_estimate(raw, BlerMethod.CLOSED_FORM, stage=f"{decoder}2")

"""
Analytic Module
Closed-form average BLER of the NOMA HARQ-CC downlink
"""

from .clamping import NumericalRegimeError, clamp_diagnostics, clamp_estimate
from .combination import avg_bler_user, avg_bler_user_additive, combine_sic, user_bler_summary
from .far_user import (
    ApproximationRangeWarning,
    FarCdfValue,
    FeasibilityError,
    avg_bler_far_decode,
    cdf_far_sinr,
    far_cdf_series,
    far_cdf_with_validity,
    far_series_table,
    log_psi_scaled,
    omega_fn,
    prefactor_c,
    psi,
    s_kn,
)
from .near_user import (
    avg_bler_near_own,
    avg_bler_oma,
    cdf_near_sinr,
    gamma_cdf,
    gamma_cdf_antiderivative,
    near_gamma_scale,
    upsilon_fn,
)
from .quadrature import (
    CompositionLimitError,
    chebyshev_nodes,
    composition_count,
    enumerate_compositions,
    omega_coefficients,
    omega_fractions,
)
from .schemas import AnalyticReport, BlerEstimate, BlerMethod, Composition, QuadratureConfig
from .series_kernel import SeriesKernel, series_kernel

__all__ = [
    "AnalyticReport",
    "ApproximationRangeWarning",
    "BlerEstimate",
    "BlerMethod",
    "Composition",
    "CompositionLimitError",
    "FarCdfValue",
    "FeasibilityError",
    "NumericalRegimeError",
    "QuadratureConfig",
    "SeriesKernel",
    "avg_bler_far_decode",
    "avg_bler_near_own",
    "avg_bler_oma",
    "avg_bler_user",
    "avg_bler_user_additive",
    "cdf_far_sinr",
    "cdf_near_sinr",
    "chebyshev_nodes",
    "clamp_diagnostics",
    "clamp_estimate",
    "combine_sic",
    "composition_count",
    "enumerate_compositions",
    "far_cdf_series",
    "far_cdf_with_validity",
    "far_series_table",
    "gamma_cdf",
    "gamma_cdf_antiderivative",
    "log_psi_scaled",
    "near_gamma_scale",
    "omega_coefficients",
    "omega_fractions",
    "omega_fn",
    "prefactor_c",
    "psi",
    "s_kn",
    "series_kernel",
    "upsilon_fn",
    "user_bler_summary",
]

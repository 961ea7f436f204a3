"""
Special Functions Module
Gaussian Q, exponential integral and incomplete Gamma kernels
"""

from .kernel import (
    SpecialFunctionDomainError,
    exp_integral_e1,
    inverse_lower_gamma,
    inverse_regularized_lower_gamma,
    lower_incomplete_gamma,
    q_function,
    regularized_lower_gamma,
)

__all__ = [
    "SpecialFunctionDomainError",
    "exp_integral_e1",
    "inverse_lower_gamma",
    "inverse_regularized_lower_gamma",
    "lower_incomplete_gamma",
    "q_function",
    "regularized_lower_gamma",
]

"""
Special Function Kernel
Gaussian Q, exponential integral and incomplete Gamma evaluations
"""

import logging
import math
from typing import Union

import numpy as np
from scipy import optimize, special

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]


class SpecialFunctionDomainError(ValueError):
    """Raised when a special function is evaluated outside its domain"""
    pass


def q_function(x: ArrayLike) -> ArrayLike:
    """
    Gaussian tail probability Q(x) = P(Z > x) for a standard normal Z

    Args:
        x: Real argument (scalar or array)

    Returns:
        Tail probability, same shape as ``x``
    """
    # ndtr(-x) keeps full relative precision deep in the upper tail
    result = special.ndtr(-np.asarray(x, dtype=float))
    return float(result) if np.ndim(result) == 0 else result


def exp_integral_e1(x: ArrayLike) -> ArrayLike:
    """
    Exponential integral E1(x) = integral of e^-t / t over [x, inf)

    Args:
        x: Strictly positive argument (scalar or array)

    Returns:
        E1(x), same shape as ``x``

    Raises:
        SpecialFunctionDomainError: If any argument is not strictly positive
    """
    arr = np.asarray(x, dtype=float)
    if np.any(~(arr > 0)):
        raise SpecialFunctionDomainError(f"E1 requires x > 0, got {x}")
    result = special.exp1(arr)
    return float(result) if np.ndim(result) == 0 else result


def _check_shape(k: int) -> None:
    if int(k) != k or k < 1:
        raise SpecialFunctionDomainError(f"Shape parameter must be an integer >= 1, got {k}")


def regularized_lower_gamma(k: int, x: ArrayLike) -> ArrayLike:
    """Regularized lower incomplete Gamma P(k, x) = gamma(k, x) / Gamma(k)"""
    _check_shape(k)
    arr = np.asarray(x, dtype=float)
    if np.any(arr < 0):
        raise SpecialFunctionDomainError(f"Incomplete Gamma requires x >= 0, got {x}")
    result = special.gammainc(k, arr)
    return float(result) if np.ndim(result) == 0 else result


def lower_incomplete_gamma(k: int, x: ArrayLike) -> ArrayLike:
    """
    Lower incomplete Gamma function gamma(k, x) for integer shape k

    For integer k this equals (k-1)! * (1 - e^-x * sum_{m<k} x^m / m!).
    scipy's regularized evaluation is used so that small ``x`` keeps
    its relative precision.

    Args:
        k: Integer shape parameter, k >= 1
        x: Nonnegative argument (scalar or array)

    Returns:
        gamma(k, x) in [0, (k-1)!]

    Raises:
        SpecialFunctionDomainError: If k < 1, k is not an integer or x < 0
    """
    _check_shape(k)
    return regularized_lower_gamma(k, x) * math.factorial(int(k) - 1)


def _inversion_bracket(k: int) -> float:
    return k + 40.0 * math.sqrt(k) + 40.0


def inverse_regularized_lower_gamma(k: int, p: float) -> float:
    """
    Invert P(k, x) = p by bracketed root search

    Args:
        k: Integer shape parameter, k >= 1
        p: Target probability in the open interval (0, 1)

    Returns:
        x >= 0 with P(k, x) = p

    Raises:
        SpecialFunctionDomainError: If p is not in (0, 1) or k is invalid
    """
    _check_shape(k)
    if not 0.0 < p < 1.0:
        raise SpecialFunctionDomainError(f"Inverse incomplete Gamma requires 0 < p < 1, got {p}")

    upper = _inversion_bracket(k)
    root = optimize.brentq(
        lambda x: special.gammainc(k, x) - p,
        0.0,
        upper,
        xtol=1e-300,
        rtol=4 * np.finfo(float).eps,
        maxiter=500,
    )
    return float(root)


def inverse_lower_gamma(k: int, y: float) -> float:
    """
    Invert the unregularized lower incomplete Gamma, gamma(k, x) = y

    Args:
        k: Integer shape parameter, k >= 1
        y: Target value in (0, Gamma(k))

    Returns:
        x >= 0 with gamma(k, x) = y
    """
    _check_shape(k)
    scale = math.factorial(int(k) - 1)
    if not 0.0 < y < scale:
        raise SpecialFunctionDomainError(
            f"Inverse lower incomplete Gamma requires 0 < y < Gamma({k}) = {scale}, got {y}"
        )
    return inverse_regularized_lower_gamma(k, y / scale)

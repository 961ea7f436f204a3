"""
Asymptotic Solver Module
High-SNR BLER, required blocklength and power allocation by bisection
"""

from .asymptotic import asymptotic_bler, asymptotic_user_bler
from .bisection import ConvergenceError, InfeasibleTargetsError, Residual, solve_power_blocklength, solver_residual
from .blocklength import (
    BlocklengthRegimeError,
    GammaInversionError,
    blocklength_for_scale,
    gamma_threshold,
    oma_required_blocklength,
    oma_user_blocklengths,
    required_blocklength_near,
)
from .comparison import compare_blocklengths
from .schemas import BlocklengthComparison, GammaInverse, ReliabilityTargets, SolverOutput

__all__ = [
    "BlocklengthComparison",
    "BlocklengthRegimeError",
    "ConvergenceError",
    "GammaInverse",
    "GammaInversionError",
    "InfeasibleTargetsError",
    "ReliabilityTargets",
    "Residual",
    "SolverOutput",
    "asymptotic_bler",
    "asymptotic_user_bler",
    "blocklength_for_scale",
    "compare_blocklengths",
    "gamma_threshold",
    "oma_required_blocklength",
    "oma_user_blocklengths",
    "required_blocklength_near",
    "solve_power_blocklength",
    "solver_residual",
]

"""
Power Allocation Solver
Bisection on the near-user power fraction for the far user's BLER target
"""

import logging
import math
from typing import NamedTuple, Optional

from backend.analytic import QuadratureConfig, far_cdf_series
from backend.asymptotic_solver.blocklength import BlocklengthRegimeError, required_blocklength_near
from backend.asymptotic_solver.schemas import GammaInverse, ReliabilityTargets, SolverOutput
from backend.model import ChannelScenario
from configs.settings import settings

logger = logging.getLogger(__name__)

ALPHA_LOWER = 0.0
ALPHA_UPPER = 0.5
UNREACHABLE = 1.0


class InfeasibleTargetsError(ValueError):
    """Raised when no power split in (0, 0.5) meets both targets"""
    pass


class ConvergenceError(RuntimeError):
    """Raised when the bisection exhausts its iteration budget or bracket"""
    pass


class Residual(NamedTuple):
    value: float
    unreachable: bool


def _residual(
    alpha1: float,
    scenario: ChannelScenario,
    n1: int,
    n2: int,
    targets: ReliabilityTargets,
    quad: QuadratureConfig,
    gamma_inverse: Optional[str],
) -> Residual:
    if alpha1 <= ALPHA_LOWER:
        # M grows without bound, theta2 -> 0 and the far CDF vanishes
        return Residual(-targets.eps2_req, False)

    config = scenario.with_power_split(alpha1)
    m = required_blocklength_near(config, n1, targets, gamma_inverse, check_regime=False)
    theta2 = math.expm1(n2 / m * math.log(2.0))
    if theta2 >= config.sinr_ceiling:
        return Residual(UNREACHABLE, True)

    raw = far_cdf_series(theta2, config, quad, user=2)
    # above 1 only where the series oscillates next to the ceiling
    if raw > 1.0:
        return Residual(UNREACHABLE, True)
    return Residual(raw - targets.eps2_req, False)


def solver_residual(
    alpha1: float,
    scenario: ChannelScenario,
    n1: int,
    n2: int,
    targets: ReliabilityTargets,
    quad: QuadratureConfig,
    gamma_inverse: Optional[str] = None,
) -> float:
    """
    Far-user residual G(alpha1) = eps22_asymptotic - eps2_req

    The blocklength is the one the near user needs at this power split.
    Returns +1 where the far user cannot be decoded at that blocklength.
    """
    return _residual(alpha1, scenario, n1, n2, targets, quad, gamma_inverse).value


def solve_power_blocklength(
    scenario: ChannelScenario,
    targets: ReliabilityTargets,
    n1: int,
    n2: int,
    quad: QuadratureConfig,
    gamma_inverse: Optional[str] = None,
    max_iterations: Optional[int] = None,
) -> SolverOutput:
    """
    Joint power allocation and required blocklength by bisection

    Args:
        scenario: Channel scenario without a power split
        targets: Reliability targets, split factor and tolerance nu
        n1: Near-user information bits
        n2: Far-user information bits
        quad: Quadrature parameters of the far-user CDF
        gamma_inverse: "regularized" or "literal" blocklength inversion
        max_iterations: Iteration cap (defaults to settings.SOLVER_MAX_ITERATIONS)

    Returns:
        SolverOutput with alpha1*, the required blocklength and the final residual

    Raises:
        InfeasibleTargetsError: If G does not change sign on (0, 0.5)
        ConvergenceError: If |G| <= nu is not reached
        BlocklengthRegimeError: If the required blocklength is below 100
    """
    reading = GammaInverse.resolve(gamma_inverse)
    cap = max_iterations if max_iterations is not None else settings.SOLVER_MAX_ITERATIONS

    def evaluate(alpha1: float) -> Residual:
        return _residual(alpha1, scenario, n1, n2, targets, quad, reading.value)

    lo, hi = ALPHA_LOWER, math.nextafter(ALPHA_UPPER, 0.0)
    g_hi = evaluate(hi)
    g_lo = evaluate(lo)
    if g_lo.value * g_hi.value > 0:
        raise InfeasibleTargetsError(
            f"No sign change of the residual on (0, 0.5): G(0)={g_lo.value:.3e}, G(0.5)={g_hi.value:.3e}"
        )

    logger.info(
        f"Solving power split: rho={scenario.rho:.4g}, T={scenario.T}, "
        f"eps1={targets.eps1_req:g}, eps2={targets.eps2_req:g}, nu={targets.nu:g}"
    )

    iterations = 0
    while True:
        if iterations >= cap:
            raise ConvergenceError(f"No convergence within {cap} iterations (bracket [{lo:.6g}, {hi:.6g}])")
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            if g_hi.unreachable:
                raise InfeasibleTargetsError(
                    f"Far-user target is unreachable: residual jumps at alpha1={hi:.6g}"
                )
            raise ConvergenceError(f"Bracket collapsed at alpha1={mid:.6g} with |G| > nu")

        iterations += 1
        g_mid = evaluate(mid)
        logger.debug(f"Iteration {iterations}: alpha1={mid:.10f}, G={g_mid.value:.3e}")
        if abs(g_mid.value) <= targets.nu:
            break
        if g_mid.value * g_hi.value > 0:
            hi, g_hi = mid, g_mid
        else:
            lo = mid

    config = scenario.with_power_split(mid)
    try:
        m_req = required_blocklength_near(config, n1, targets, reading.value)
    except BlocklengthRegimeError:
        logger.error(f"Required blocklength below the regime at alpha1={mid:.6g}")
        raise

    logger.info(f"Converged after {iterations} iterations: alpha1*={mid:.6f}, M={m_req:.2f}")
    return SolverOutput(
        alpha1_star=mid,
        m_req_real=m_req,
        m_req_ceil=math.ceil(m_req),
        iterations=iterations,
        residual=g_mid.value,
        bracket_width=hi - lo,
        gamma_inverse=reading,
    )

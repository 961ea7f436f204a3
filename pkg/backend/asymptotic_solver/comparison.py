"""
NOMA versus OMA Blocklength
"""

import logging
from typing import Optional, Tuple

from backend.analytic import QuadratureConfig
from backend.asymptotic_solver.bisection import solve_power_blocklength
from backend.asymptotic_solver.blocklength import oma_user_blocklengths, oma_required_blocklength
from backend.asymptotic_solver.schemas import BlocklengthComparison, ReliabilityTargets, SolverOutput
from backend.model import ChannelScenario, linear_to_db

logger = logging.getLogger(__name__)


def compare_blocklengths(
    scenario: ChannelScenario,
    targets: ReliabilityTargets,
    n1: int,
    n2: int,
    quad: QuadratureConfig,
    gamma_inverse: Optional[str] = None,
) -> Tuple[SolverOutput, BlocklengthComparison]:
    """Solve the NOMA power split and set its blocklength against OMA's"""
    solution = solve_power_blocklength(scenario, targets, n1, n2, quad, gamma_inverse)
    m_oma = oma_required_blocklength(scenario, n1, n2, targets, gamma_inverse)
    m1, m2 = oma_user_blocklengths(scenario, n1, n2, targets, gamma_inverse)

    comparison = BlocklengthComparison(
        rho_db=round(linear_to_db(scenario.rho), 9),
        eps2_target=targets.eps2_req,
        m_noma=solution.m_req_real,
        m_oma=m_oma,
        m_oma_user1=m1,
        m_oma_user2=m2,
        gap=m_oma - solution.m_req_real,
    )
    logger.info(
        f"rho={comparison.rho_db:g} dB, eps2={targets.eps2_req:g}: "
        f"M_NOMA={comparison.m_noma:.2f}, M_OMA={m_oma:.2f}, gap={comparison.gap:.2f}"
    )
    return solution, comparison

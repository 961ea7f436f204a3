"""
Figure Builders
Sweeps producing the BLER and blocklength tables
"""

import logging
from typing import Any, Dict, List, Optional, Sequence, Tuple

from backend.analytic import QuadratureConfig, avg_bler_oma, user_bler_summary
from backend.asymptotic_solver import ReliabilityTargets, compare_blocklengths
from backend.figures.orchestrator import SweepOrchestrator, SweepPointError
from backend.figures.schemas import Figure1Row, Figure2Row, Figure3Row
from backend.model import ChannelScenario, RunConfig, SolveConfig, db_to_linear
from backend.montecarlo import McConfig, simulate_avg_bler

logger = logging.getLogger(__name__)

FIGURE1_DEFAULTS: Dict[str, Any] = {}
FIGURE1_SWEEP = "10:40:2.5"
FIGURE1_ROUNDS = (1, 2, 3)

FIGURE2_DEFAULTS: Dict[str, Any] = {"rho_db": 30.0, "alpha1": 0.2, "T": 3, "n1": 300, "n2": 300, "m": 500.0}
FIGURE2_SWEEP = "500:1500:100"
OMA_SHARES = (0.2, 0.5)

FIGURE3_DEFAULTS: Dict[str, Any] = {
    "rho_db": 35.0, "alpha1": 0.2, "T": 3, "n1": 300, "n2": 300, "m": 500.0,
    "eps1_req": 1e-5, "eps2_req": 1e-5, "delta": 0.1, "nu": 1e-7,
}
FIGURE3_SWEEP = "30:40:2.5"
FIGURE3_EPS2_TARGETS = (1e-5, 5e-6)


def _status(error: SweepPointError) -> str:
    return f"error:{type(error.cause).__name__}"


def quadrature_of(config: RunConfig) -> QuadratureConfig:
    return QuadratureConfig(n_nodes=config.quad_n, l_terms=config.quad_l)


def figure1_rows(
    base: RunConfig,
    rho_grid: Sequence[float],
    rounds: Sequence[int] = FIGURE1_ROUNDS,
    orchestrator: Optional[SweepOrchestrator] = None,
) -> List[Figure1Row]:
    """Analytic and Monte Carlo user BLERs for every (T, rho) pair"""
    orchestrator = orchestrator or SweepOrchestrator()
    quad = quadrature_of(base)
    mc = McConfig(seed=base.seed, trials=base.trials)
    coding = base.coding()
    points = [(rho_db, t) for t in rounds for rho_db in rho_grid]

    def evaluate(point: Tuple[float, int]) -> List[Figure1Row]:
        rho_db, t = point
        config = base.model_copy(update={"rho_db": rho_db, "T": t}).system()
        analytic = user_bler_summary(config, coding, quad)
        simulated = simulate_avg_bler(config, coding, mc)
        return [
            Figure1Row(rho_db=rho_db, T=t, user=1, bler_analytic=analytic.eps1.value,
                       bler_mc=simulated.eps1.value, mc_stderr=simulated.eps1.std_err),
            Figure1Row(rho_db=rho_db, T=t, user=2, bler_analytic=analytic.eps2.value,
                       bler_mc=simulated.eps2.value, mc_stderr=simulated.eps2.std_err),
        ]

    rows: List[Figure1Row] = []
    for (rho_db, t), result in zip(points, orchestrator.run(points, evaluate)):
        if isinstance(result, SweepPointError):
            rows.extend(Figure1Row(rho_db=rho_db, T=t, user=u, status=_status(result)) for u in (1, 2))
        else:
            rows.extend(result)
    return rows


def figure2_rows(
    base: RunConfig,
    m_grid: Sequence[float],
    shares: Sequence[float] = OMA_SHARES,
    orchestrator: Optional[SweepOrchestrator] = None,
) -> List[Figure2Row]:
    """NOMA user BLERs against OMA with the given near-user blocklength shares"""
    orchestrator = orchestrator or SweepOrchestrator()
    quad = quadrature_of(base)
    config = base.system()
    scenario = config.scenario()

    def evaluate(m: float) -> Figure2Row:
        noma = user_bler_summary(config, base.model_copy(update={"m": m}).coding(), quad)
        values = {"m": m, "noma_u1": noma.eps1.value, "noma_u2": noma.eps2.value}
        for share in shares:
            tag = f"oma{round(share * 100)}"
            values[f"{tag}_u1"] = avg_bler_oma(scenario, base.n1, share * m, 1).value
            values[f"{tag}_u2"] = avg_bler_oma(scenario, base.n2, (1.0 - share) * m, 2).value
        return Figure2Row(**values)

    rows = []
    for m, result in zip(m_grid, orchestrator.run(list(m_grid), evaluate)):
        rows.append(Figure2Row(m=m, status=_status(result)) if isinstance(result, SweepPointError) else result)
    return rows


def solve_inputs(config: SolveConfig, eps2_req: Optional[float] = None) -> Tuple[ChannelScenario, ReliabilityTargets]:
    """Channel scenario and targets of a solve configuration"""
    scenario = ChannelScenario(
        rho=db_to_linear(config.rho_db), d1=config.d1, d2=config.d2, eta=config.eta, T=config.T
    )
    targets = ReliabilityTargets(
        eps1_req=config.eps1_req,
        eps2_req=config.eps2_req if eps2_req is None else eps2_req,
        delta=config.delta,
        nu=config.nu,
    )
    return scenario, targets


def figure3_rows(
    base: SolveConfig,
    rho_grid: Sequence[float],
    eps2_targets: Sequence[float] = FIGURE3_EPS2_TARGETS,
    orchestrator: Optional[SweepOrchestrator] = None,
) -> List[Figure3Row]:
    """Required NOMA and OMA blocklengths for every (far-user target, rho) pair"""
    orchestrator = orchestrator or SweepOrchestrator()
    quad = quadrature_of(base)
    points = [(rho_db, eps2) for eps2 in eps2_targets for rho_db in rho_grid]

    def evaluate(point: Tuple[float, float]) -> Figure3Row:
        rho_db, eps2 = point
        scenario, targets = solve_inputs(base.model_copy(update={"rho_db": rho_db}), eps2)
        solution, comparison = compare_blocklengths(
            scenario, targets, base.n1, base.n2, quad, base.gamma_inverse
        )
        return Figure3Row(
            rho_db=rho_db,
            eps2_target=eps2,
            m_noma=comparison.m_noma,
            m_oma=comparison.m_oma,
            gap=comparison.gap,
            alpha1_star=solution.alpha1_star,
        )

    rows = []
    for (rho_db, eps2), result in zip(points, orchestrator.run(points, evaluate)):
        if isinstance(result, SweepPointError):
            rows.append(Figure3Row(rho_db=rho_db, eps2_target=eps2, status=_status(result)))
        else:
            rows.append(result)
    return rows

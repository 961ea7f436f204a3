"""
Validation Harness
Checks every closed form against quadrature, Monte Carlo and its own claims
"""

import logging
import math
from typing import Callable, Dict, Iterable, List, Optional, Tuple, Union

import numpy as np
from scipy import integrate, stats

from backend.analytic import (
    QuadratureConfig,
    avg_bler_far_decode,
    avg_bler_near_own,
    cdf_near_sinr,
    far_cdf_series,
    gamma_cdf,
    gamma_cdf_antiderivative,
    omega_coefficients,
    omega_fn,
    user_bler_summary,
)
from backend.asymptotic_solver import (
    BlocklengthComparison,
    GammaInverse,
    ReliabilityTargets,
    SolverOutput,
    asymptotic_bler,
    compare_blocklengths,
    solver_residual,
)
from backend.figures.builders import (
    FIGURE1_ROUNDS,
    FIGURE1_SWEEP,
    FIGURE2_DEFAULTS,
    FIGURE2_SWEEP,
    FIGURE3_EPS2_TARGETS,
    figure2_rows,
)
from backend.figures.orchestrator import SweepOrchestrator, SweepPointError
from backend.figures.schemas import CriterionResult, SweepSpec, ValidationReport
from backend.model import ChannelScenario, CodingConfig, RunConfig, SystemConfig, db_to_linear, linearize
from backend.montecarlo import McConfig, sample_accumulated_sinr, simulate_avg_bler
from backend.specfun import exp_integral_e1
from configs.settings import settings

logger = logging.getLogger(__name__)

ALL_CRITERIA = tuple(range(1, 10))

FIG1_CODING = CodingConfig(n1=160, n2=160, m=200)
FIG3_BITS = 300
FIG3_ROUNDS = 3
FIG3_RHO_DB = (30.0, 35.0, 40.0)
FIG3_EPS1 = 1e-5
FIG3_DELTA = 0.1
FIG3_NU = 1e-7
MC_RHO_DB = (15.0, 20.0, 25.0)
KS_RHO_DB = 20.0

Figure3Outcome = Union[Tuple[SolverOutput, BlocklengthComparison], SweepPointError]


def _status(error: SweepPointError) -> str:
    return f"{type(error.cause).__name__}: {error.cause}"


def _relative_error(value: float, reference: float) -> float:
    scale = abs(reference)
    if scale == 0.0:
        return abs(value)
    return abs(value - reference) / scale


def window_quadrature(cdf: Callable[[float], float], lin, epsrel: float = 1e-12) -> float:
    """lambda times the adaptive integral of a CDF over the linearization window"""
    lower = max(lin.upsilon, 0.0)
    value, _ = integrate.quad(cdf, lower, lin.tau, epsabs=0.0, epsrel=epsrel, limit=200)
    return lin.lam * value


def random_configs(seed: int, count: int) -> List[SystemConfig]:
    """Feasible reference-geometry configurations with random SNR, split and rounds"""
    rng = np.random.default_rng(seed)
    configs = []
    for _ in range(count):
        rho_db = float(rng.uniform(15.0, 30.0))
        alpha1 = float(rng.uniform(0.05, 0.3))
        rounds = int(rng.integers(1, 4))
        configs.append(RunConfig(rho_db=rho_db, alpha1=alpha1, T=rounds).system())
    return configs


class ValidationHarness:
    """
    Runs the acceptance checks for one seed and trial count

    Reports are deterministic: they contain measured values and thresholds
    but never timings.
    """

    def __init__(
        self,
        base: Optional[RunConfig] = None,
        corrupt_omega: bool = False,
        orchestrator: Optional[SweepOrchestrator] = None,
    ):
        self.base = base or RunConfig()
        self.quad = QuadratureConfig(n_nodes=self.base.quad_n, l_terms=self.base.quad_l)
        self.mc = McConfig(seed=self.base.seed, trials=self.base.trials)
        self.corrupt_omega = corrupt_omega
        self.orchestrator = orchestrator or SweepOrchestrator()
        self._solutions: Dict[GammaInverse, Dict[Tuple[float, float], Figure3Outcome]] = {}

    def run(self, criteria: Optional[Iterable[int]] = None) -> ValidationReport:
        selected = sorted(set(criteria)) if criteria else list(ALL_CRITERIA)
        unknown = [c for c in selected if c not in ALL_CRITERIA]
        if unknown:
            raise ValueError(f"Unknown criteria: {unknown}")

        checks = {
            1: self.check_far_series,
            2: self.check_near_closed_form,
            3: self.check_monte_carlo,
            4: self.check_antiderivatives,
            5: self.check_gamma_ks,
            6: self.check_solver_round_trip,
            7: self.check_blocklength_gap,
            8: self.check_figure_claims,
            9: self.check_determinism,
        }
        report = ValidationReport(seed=self.base.seed, trials=self.base.trials)
        for number in selected:
            logger.info(f"Validating criterion {number}")
            try:
                result = checks[number]()
            except Exception as e:
                logger.error(f"Criterion {number} raised: {e}")
                result = CriterionResult(
                    number=number, name=checks[number].__name__[6:], passed=False,
                    measured=f"error:{type(e).__name__}", threshold="no error", details=[str(e)],
                )
            report.results.append(result)
        return report

    def check_far_series(self) -> CriterionResult:
        """Far-user closed form against quadrature of the CDF series"""
        omega = None
        if self.corrupt_omega:
            omega = [-w for w in omega_coefficients(self.quad.l_terms)]

        tolerance = settings.FAR_SERIES_RTOL
        worst = 0.0
        details = []
        for i, config in enumerate(random_configs(self.base.seed, settings.VALIDATION_CONFIGS)):
            closed = avg_bler_far_decode(config, FIG1_CODING, self.quad, decoder=2, omega=omega).raw_value
            lin = linearize(FIG1_CODING.n2, FIG1_CODING.m)
            oracle = window_quadrature(lambda r: far_cdf_series(r, config, self.quad, 2), lin)
            error = _relative_error(closed, oracle)
            worst = max(worst, error)
            details.append(f"config {i}: T={config.T} alpha1={config.alpha1:.4f} closed={closed:.10e} quad={oracle:.10e}")
        return CriterionResult(
            number=1, name="far_series_equivalence", passed=worst <= tolerance,
            measured=f"{worst:.3e}", threshold=f"<= {tolerance:g}", details=details,
        )

    def check_near_closed_form(self) -> CriterionResult:
        """Near-user closed form against quadrature of the Gamma CDF"""
        tolerance = settings.NEAR_CLOSED_FORM_RTOL
        worst = 0.0
        lin = linearize(FIG1_CODING.n1, FIG1_CODING.m)
        for config in random_configs(self.base.seed + 1, settings.VALIDATION_CONFIGS):
            closed = avg_bler_near_own(config, FIG1_CODING).raw_value
            oracle = window_quadrature(lambda r: cdf_near_sinr(r, config), lin, epsrel=1e-13)
            worst = max(worst, _relative_error(closed, oracle))
        return CriterionResult(
            number=2, name="near_closed_form_equivalence", passed=worst <= tolerance,
            measured=f"{worst:.3e}", threshold=f"<= {tolerance:g}",
        )

    def _fig1_config(self, rho_db: float, rounds: int) -> SystemConfig:
        return RunConfig(rho_db=rho_db, T=rounds).system()

    def check_monte_carlo(self) -> CriterionResult:
        """Closed-form eps22 and eps11 against the seeded simulation"""
        points = [(rho_db, t) for t in FIGURE1_ROUNDS for rho_db in MC_RHO_DB]

        def evaluate(point):
            config = self._fig1_config(*point)
            return user_bler_summary(config, FIG1_CODING, self.quad), simulate_avg_bler(config, FIG1_CODING, self.mc)

        passed = True
        compared = 0
        details = []
        for (rho_db, t), result in zip(points, self.orchestrator.run(points, evaluate)):
            if isinstance(result, SweepPointError):
                raise result.cause
            analytic, simulated = result
            for stage in ("eps22", "eps11"):
                a = getattr(analytic, stage).value
                mc = getattr(simulated, stage)
                if mc.value < settings.MC_MIN_ESTIMATE:
                    details.append(f"rho={rho_db:g} T={t} {stage}: skipped (mc={mc.value:.3e})")
                    continue
                compared += 1
                allowed = max(3.0 * mc.std_err, settings.MC_RELATIVE_SLACK * mc.value)
                ok = abs(a - mc.value) <= allowed
                passed = passed and ok
                details.append(
                    f"rho={rho_db:g} T={t} {stage}: analytic={a:.4e} mc={mc.value:.4e} "
                    f"se={mc.std_err:.2e} {'ok' if ok else 'MISMATCH'}"
                )
            details.append(
                f"rho={rho_db:g} T={t} eps1 joint={simulated.eps1.value:.4e} "
                f"product={simulated.eps1_product:.4e} analytic={analytic.eps1.value:.4e}"
            )
        return CriterionResult(
            number=3, name="monte_carlo_agreement", passed=passed and compared > 0,
            measured=f"{compared} points compared",
            threshold=f"max(3 se; {settings.MC_RELATIVE_SLACK:g} rel)", details=details,
        )

    def check_antiderivatives(self) -> CriterionResult:
        """Finite-difference slopes of Omega and Upsilon"""
        tolerance = settings.ANTIDERIVATIVE_RTOL
        worst_omega = 0.0
        for x in np.geomspace(0.5, 5.0, 20):
            h = 1e-5 * x
            slope = (omega_fn(x + h, 1.0) - omega_fn(x - h, 1.0)) / (2.0 * h)
            worst_omega = max(worst_omega, _relative_error(slope, -exp_integral_e1(1.0 / x)))

        config = self._fig1_config(20.0, 2)
        scale = config.rho * config.alpha1 * config.mu(1)
        worst_upsilon = 0.0
        for x in np.linspace(0.2, 3.0, 20) * scale:
            h = 1e-5 * x
            slope = (gamma_cdf_antiderivative(x + h, config.T, scale)
                     - gamma_cdf_antiderivative(x - h, config.T, scale)) / (2.0 * h)
            worst_upsilon = max(worst_upsilon, _relative_error(slope, gamma_cdf(x, config.T, scale)))

        worst = max(worst_omega, worst_upsilon)
        return CriterionResult(
            number=4, name="antiderivative_identities", passed=worst <= tolerance,
            measured=f"omega {worst_omega:.3e}; upsilon {worst_upsilon:.3e}", threshold=f"<= {tolerance:g}",
        )

    def check_gamma_ks(self) -> CriterionResult:
        """Kolmogorov-Smirnov distance of the near-user Gamma CDF"""
        bound = 1.63 / math.sqrt(self.mc.trials) * 1.5
        worst = 0.0
        details = []
        for t in FIGURE1_ROUNDS:
            config = self._fig1_config(KS_RHO_DB, t)
            samples = sample_accumulated_sinr(config, "11", self.mc)
            distance = float(stats.kstest(samples, lambda r: cdf_near_sinr(r, config)).statistic)
            worst = max(worst, distance)
            details.append(f"T={t}: D={distance:.3e}")
        return CriterionResult(
            number=5, name="gamma_cdf_ks", passed=worst <= bound,
            measured=f"{worst:.3e}", threshold=f"<= {bound:.3e}", details=details,
        )

    def _figure3_scenario(self, rho_db: float) -> ChannelScenario:
        return ChannelScenario(rho=db_to_linear(rho_db), d1=self.base.d1, d2=self.base.d2,
                               eta=self.base.eta, T=FIG3_ROUNDS)

    def _figure3_solutions(self, reading: GammaInverse) -> Dict[Tuple[float, float], Figure3Outcome]:
        if reading in self._solutions:
            return self._solutions[reading]

        points = [(rho_db, eps2) for eps2 in FIGURE3_EPS2_TARGETS for rho_db in FIG3_RHO_DB]

        def evaluate(point):
            rho_db, eps2 = point
            targets = ReliabilityTargets(eps1_req=FIG3_EPS1, eps2_req=eps2, delta=FIG3_DELTA, nu=FIG3_NU)
            return compare_blocklengths(
                self._figure3_scenario(rho_db), targets, FIG3_BITS, FIG3_BITS, self.quad, reading.value
            )

        solutions = dict(zip(points, self.orchestrator.run(points, evaluate)))
        self._solutions[reading] = solutions
        return solutions

    def check_solver_round_trip(self) -> CriterionResult:
        """Solver residual and the near-user budget at the returned operating point"""
        reading = GammaInverse.resolve(None)
        tolerance = settings.ROUND_TRIP_RTOL
        passed = True
        worst_residual = 0.0
        worst_budget = 0.0
        details = []
        budget = FIG3_EPS1 / (1.0 + FIG3_DELTA)
        for (rho_db, eps2), outcome in self._figure3_solutions(reading).items():
            if isinstance(outcome, SweepPointError):
                passed = False
                details.append(f"rho={rho_db:g} eps2={eps2:g}: {_status(outcome)}")
                continue
            solution, _ = outcome
            scenario = self._figure3_scenario(rho_db)
            targets = ReliabilityTargets(eps1_req=FIG3_EPS1, eps2_req=eps2, delta=FIG3_DELTA, nu=FIG3_NU)
            residual = solver_residual(
                solution.alpha1_star, scenario, FIG3_BITS, FIG3_BITS, targets, self.quad, reading.value
            )
            config = scenario.with_power_split(solution.alpha1_star)
            coding = CodingConfig(n1=FIG3_BITS, n2=FIG3_BITS, m=solution.m_req_real)
            eps11 = asymptotic_bler(config, coding, "11", self.quad).value
            budget_error = _relative_error(eps11, budget)

            worst_residual = max(worst_residual, abs(residual))
            worst_budget = max(worst_budget, budget_error)
            passed = passed and abs(residual) <= FIG3_NU and budget_error <= tolerance
            details.append(
                f"rho={rho_db:g} eps2={eps2:g}: alpha1*={solution.alpha1_star:.8f} "
                f"M={solution.m_req_real:.4f} G={residual:.3e} iterations={solution.iterations}"
            )
        return CriterionResult(
            number=6, name="solver_round_trip", passed=passed,
            measured=f"|G| {worst_residual:.3e}; eps11 rel {worst_budget:.3e}",
            threshold=f"|G| <= {FIG3_NU:g}; rel <= {tolerance:g}", details=details,
        )

    def _gap_table(self, reading: GammaInverse) -> Tuple[Dict[Tuple[float, float], float], List[str]]:
        gaps = {}
        lines = []
        for (rho_db, eps2), outcome in self._figure3_solutions(reading).items():
            if isinstance(outcome, SweepPointError):
                lines.append(f"{reading.value} rho={rho_db:g} eps2={eps2:g}: {_status(outcome)}")
                continue
            gaps[(rho_db, eps2)] = outcome[1].gap
            lines.append(f"{reading.value} rho={rho_db:g} eps2={eps2:g}: gap={outcome[1].gap:.4f}")
        return gaps, lines

    def check_blocklength_gap(self) -> CriterionResult:
        """
        OMA needs more blocklength than NOMA and the gap grows with SNR

        Judged on the configured Gamma-inverse reading; the other reading's
        gaps are listed alongside.
        """
        reading = GammaInverse.resolve(None)
        other = next(r for r in GammaInverse if r is not reading)
        gaps, details = self._gap_table(reading)
        complete = len(gaps) == len(FIG3_RHO_DB) * len(FIGURE3_EPS2_TARGETS)
        positive = complete and all(g > 0 for g in gaps.values())

        equal_targets = FIGURE3_EPS2_TARGETS[0]
        low = gaps.get((FIG3_RHO_DB[0], equal_targets))
        high = gaps.get((FIG3_RHO_DB[-1], equal_targets))
        increasing = low is not None and high is not None and high > low
        details.append(f"gap positive everywhere: {positive}")
        details.append(f"gap at {FIG3_RHO_DB[-1]:g} dB exceeds gap at {FIG3_RHO_DB[0]:g} dB: {increasing}")

        details.extend(self._gap_table(other)[1])

        spread = f"{high - low:.4f}" if low is not None and high is not None else "n/a"
        smallest = f"{min(gaps.values()):.4f}" if gaps else "n/a"
        return CriterionResult(
            number=7, name="blocklength_gap", passed=positive and increasing,
            measured=f"min gap {smallest}; gap({FIG3_RHO_DB[-1]:g})-gap({FIG3_RHO_DB[0]:g}) {spread}",
            threshold="all > 0; increase > 0", details=details,
        )

    def check_figure_claims(self) -> CriterionResult:
        """Far user below near user on the BLER grid; BLER nonincreasing in blocklength"""
        rho_grid = SweepSpec.parse("rho_db", FIGURE1_SWEEP).points()
        ordering_failures = []
        for t in FIGURE1_ROUNDS:
            for rho_db in rho_grid:
                report = user_bler_summary(self._fig1_config(rho_db, t), FIG1_CODING, self.quad)
                if report.eps2.value > report.eps1.value:
                    ordering_failures.append(f"rho={rho_db:g} T={t}: eps2={report.eps2.value:.4e} > eps1={report.eps1.value:.4e}")

        fig2_base = RunConfig(**{**FIGURE2_DEFAULTS, "quad_n": self.base.quad_n, "quad_l": self.base.quad_l})
        rows = figure2_rows(fig2_base, SweepSpec.parse("m", FIGURE2_SWEEP).points(), orchestrator=self.orchestrator)
        columns = ["noma_u1", "noma_u2", "oma20_u1", "oma20_u2", "oma50_u1", "oma50_u2"]
        monotone_failures = []
        for column in columns:
            values = [getattr(row, column) for row in rows]
            if any(v is None for v in values):
                monotone_failures.append(f"{column}: missing values")
                continue
            for previous, row, value in zip(rows, rows[1:], values[1:]):
                if value > getattr(previous, column) + 1e-12:
                    monotone_failures.append(f"{column}: increases from M={previous.m:g} to M={row.m:g}")

        failures = ordering_failures + monotone_failures
        return CriterionResult(
            number=8, name="figure_claims", passed=not failures,
            measured=f"{len(ordering_failures)} ordering; {len(monotone_failures)} monotonicity violations",
            threshold="0 violations", details=failures,
        )

    def check_determinism(self) -> CriterionResult:
        """Two seeded runs give identical estimates and samples"""
        config = self._fig1_config(20.0, 2)
        mc = McConfig(seed=self.mc.seed, trials=min(self.mc.trials, 100_000), batch=self.mc.batch)
        first = simulate_avg_bler(config, FIG1_CODING, mc).model_dump_json()
        second = simulate_avg_bler(config, FIG1_CODING, mc).model_dump_json()
        samples_equal = np.array_equal(
            sample_accumulated_sinr(config, "22", mc), sample_accumulated_sinr(config, "22", mc)
        )
        identical = first == second and samples_equal
        return CriterionResult(
            number=9, name="determinism", passed=identical,
            measured="identical" if identical else "differs", threshold="identical",
        )


def run_validation(
    base: Optional[RunConfig] = None,
    criteria: Optional[Iterable[int]] = None,
    corrupt_omega: bool = False,
) -> ValidationReport:
    """Run the selected acceptance checks and return the report"""
    return ValidationHarness(base, corrupt_omega=corrupt_omega).run(criteria)

"""
Monte Carlo BLER Simulator
Direct simulation of Rayleigh block fading with chase-combined rounds
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Optional, Tuple

import numpy as np

from backend.analytic import BlerEstimate, BlerMethod, combine_sic
from backend.model import CodingConfig, SystemConfig, instantaneous_bler
from backend.montecarlo.schemas import McConfig, McReport

logger = logging.getLogger(__name__)

STAGES = ("11", "12", "22")
QUANTITIES = ("eps11", "eps12", "eps22", "eps1")


class SimulationError(ValueError):
    """Raised for invalid Monte Carlo inputs"""
    pass


class RunningMoments:
    """Count, mean and summed squared deviation, mergeable across partitions"""

    __slots__ = ("count", "mean", "m2")

    def __init__(self, count: int = 0, mean: float = 0.0, m2: float = 0.0):
        self.count = count
        self.mean = mean
        self.m2 = m2

    @classmethod
    def of(cls, values: np.ndarray) -> "RunningMoments":
        mean = float(values.mean())
        return cls(len(values), mean, float(np.square(values - mean).sum()))

    def merge(self, other: "RunningMoments") -> "RunningMoments":
        if other.count == 0:
            return self
        if self.count == 0:
            return RunningMoments(other.count, other.mean, other.m2)
        n = self.count + other.count
        delta = other.mean - self.mean
        mean = self.mean + delta * other.count / n
        m2 = self.m2 + other.m2 + delta ** 2 * self.count * other.count / n
        return RunningMoments(n, mean, m2)

    def mean_and_stderr(self) -> Tuple[float, float]:
        if self.count < 2:
            return self.mean, 0.0
        variance = self.m2 / (self.count - 1)
        return self.mean, float(np.sqrt(variance / self.count))


def partition_streams(mc: McConfig) -> List[np.random.Generator]:
    """One counter-based Philox generator per partition, spawned from the run seed"""
    children = np.random.SeedSequence(mc.seed).spawn(mc.n_partitions)
    return [np.random.Generator(np.random.Philox(child)) for child in children]


def sample_channel_power(stream: np.random.Generator, count: int) -> np.ndarray:
    """
    Unit-mean exponential channel powers |h|^2 by inverse transform

    Args:
        stream: Generator of one partition
        count: Number of samples, >= 1
    """
    if count < 1:
        raise SimulationError(f"Sample count must be >= 1, got {count}")
    return -np.log1p(-stream.random(count))


def _draw_partition(stream: np.random.Generator, rounds: int, count: int) -> Tuple[np.ndarray, np.ndarray]:
    powers = sample_channel_power(stream, 2 * rounds * count).reshape(2, rounds, count)
    return powers[0], powers[1]


def _accumulated_sinr(config: SystemConfig, h1: np.ndarray, h2: np.ndarray) -> Dict[str, np.ndarray]:
    """Per-stage SINR summed over exactly T rounds"""
    rho, a1, a2 = config.rho, config.alpha1, config.alpha2
    g1 = rho * config.mu(1) * h1
    g2 = rho * config.mu(2) * h2
    return {
        "11": (a1 * g1).sum(axis=0),
        "12": (a2 * g1 / (a1 * g1 + 1.0)).sum(axis=0),
        "22": (a2 * g2 / (a1 * g2 + 1.0)).sum(axis=0),
    }


def _simulate_partition(
    config: SystemConfig,
    coding: CodingConfig,
    stream: np.random.Generator,
    count: int,
) -> Dict[str, RunningMoments]:
    h1, h2 = _draw_partition(stream, config.T, count)
    sinr = _accumulated_sinr(config, h1, h2)

    eps11 = instantaneous_bler(sinr["11"], coding.n1, coding.m)
    eps12 = instantaneous_bler(sinr["12"], coding.n2, coding.m)
    eps22 = instantaneous_bler(sinr["22"], coding.n2, coding.m)
    # both stages come from the same realization
    eps1 = combine_sic(eps12, eps11)

    values = {"eps11": eps11, "eps12": eps12, "eps22": eps22, "eps1": eps1}
    return {name: RunningMoments.of(np.atleast_1d(v)) for name, v in values.items()}


def simulate_avg_bler(
    config: SystemConfig,
    coding: CodingConfig,
    mc: Optional[McConfig] = None,
    workers: int = 1,
) -> McReport:
    """
    Estimate every average BLER by simulation

    Each trial draws T channel powers per user, accumulates the per-round
    SINRs of each SIC stage, evaluates the normal-approximation BLER and
    combines the near user's stages within the trial. Partitions may run on
    several threads; they are always reduced in partition order.

    Args:
        config: System configuration
        coding: Code parameters
        mc: Seed, trial count and batch size
        workers: Threads used for partitions

    Returns:
        McReport with standard errors for every quantity
    """
    mc = mc or McConfig()
    if workers < 1:
        raise SimulationError(f"Worker count must be >= 1, got {workers}")

    sizes = mc.partition_sizes()
    streams = partition_streams(mc)
    logger.info(
        f"Monte Carlo: {mc.trials} trials in {len(sizes)} partitions, seed={mc.seed}, "
        f"rho={config.rho:.4g}, T={config.T}"
    )

    def run(index: int) -> Dict[str, RunningMoments]:
        return _simulate_partition(config, coding, streams[index], sizes[index])

    if workers == 1:
        partials = [run(i) for i in range(len(sizes))]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            partials = list(pool.map(run, range(len(sizes))))

    totals = {name: RunningMoments() for name in QUANTITIES}
    for partial in partials:
        for name in QUANTITIES:
            totals[name] = totals[name].merge(partial[name])

    estimates = {}
    for name in QUANTITIES:
        mean, stderr = totals[name].mean_and_stderr()
        estimates[name] = BlerEstimate(
            value=min(max(mean, 0.0), 1.0),
            method=BlerMethod.MONTE_CARLO,
            std_err=stderr,
            stage=name[3:],
        )

    eps11, eps12 = estimates["eps11"].value, estimates["eps12"].value
    return McReport(
        eps11=estimates["eps11"],
        eps12=estimates["eps12"],
        eps22=estimates["eps22"],
        eps1=estimates["eps1"],
        eps2=estimates["eps22"].model_copy(update={"stage": "2"}),
        eps1_product=combine_sic(eps12, eps11),
        trials_used=totals["eps1"].count,
    )


def sample_accumulated_sinr(config: SystemConfig, stage: str, mc: Optional[McConfig] = None) -> np.ndarray:
    """
    Accumulated SINR samples of one SIC stage from the seeded partitions

    Uses the same draws as simulate_avg_bler for the same McConfig.
    """
    stage = str(stage)
    if stage not in STAGES:
        raise SimulationError(f"Stage must be one of {STAGES}, got {stage}")
    mc = mc or McConfig()

    samples = []
    for stream, count in zip(partition_streams(mc), mc.partition_sizes()):
        h1, h2 = _draw_partition(stream, config.T, count)
        samples.append(_accumulated_sinr(config, h1, h2)[stage])
    return np.concatenate(samples)


def empirical_cdf(samples, r):
    """Fraction of samples at or below r (scalar or array)"""
    data = np.sort(np.asarray(samples, dtype=float).ravel())
    if data.size == 0:
        raise SimulationError("Empirical CDF needs at least one sample")
    result = np.searchsorted(data, np.asarray(r, dtype=float), side="right") / data.size
    return float(result) if np.ndim(result) == 0 else result

"""
Tests for the Monte Carlo Module
"""

import numpy as np
import pytest
from pydantic import ValidationError

from backend.analytic import combine_sic
from backend.model import CodingConfig, RunConfig, SystemConfig, instantaneous_bler
from backend.montecarlo import (
    McConfig,
    RunningMoments,
    SimulationError,
    empirical_cdf,
    partition_streams,
    sample_accumulated_sinr,
    sample_channel_power,
    simulate_avg_bler,
)


@pytest.fixture
def coding():
    return CodingConfig(n1=160, n2=160, m=200)


@pytest.fixture(scope="module")
def fig1_report():
    config = RunConfig(rho_db=20.0, T=2).system()
    return simulate_avg_bler(config, CodingConfig(n1=160, n2=160, m=200), McConfig(seed=1, trials=200_000, batch=50_000))


def test_channel_power_moments():
    """Unit-mean, unit-variance exponentials"""
    stream = partition_streams(McConfig(seed=42, trials=1, batch=1))[0]
    samples = sample_channel_power(stream, 1_000_000)
    assert samples.mean() == pytest.approx(1.0, abs=0.005)
    assert samples.var() == pytest.approx(1.0, abs=0.01)
    assert samples.min() >= 0


def test_channel_power_reproducible():
    """Same seed, same draws"""
    first = sample_channel_power(partition_streams(McConfig(seed=9, trials=1, batch=1))[0], 100)
    second = sample_channel_power(partition_streams(McConfig(seed=9, trials=1, batch=1))[0], 100)
    assert np.array_equal(first, second)
    with pytest.raises(SimulationError):
        sample_channel_power(partition_streams(McConfig(seed=9, trials=1, batch=1))[0], 0)


def test_partition_layout():
    """Full partitions then the remainder"""
    mc = McConfig(seed=0, trials=250, batch=100)
    assert mc.n_partitions == 3
    assert mc.partition_sizes() == [100, 100, 50]
    assert len(partition_streams(mc)) == 3


def test_mc_config_rejects_zero_trials():
    """At least one trial"""
    with pytest.raises(ValidationError):
        McConfig(trials=0)


def test_running_moments_merge():
    """Merging partitions equals one pass over all values"""
    rng = np.random.default_rng(3)
    values = rng.random(1000)
    merged = RunningMoments.of(values[:300]).merge(RunningMoments.of(values[300:]))
    mean, stderr = merged.mean_and_stderr()
    assert mean == pytest.approx(values.mean(), rel=1e-12)
    assert stderr == pytest.approx(values.std(ddof=1) / np.sqrt(values.size), rel=1e-10)


def test_reproducible_across_worker_counts(coding):
    """Results depend on the seed only, not on threading"""
    config = RunConfig(rho_db=20.0, T=2).system()
    mc = McConfig(seed=7, trials=20_000, batch=5_000)
    serial = simulate_avg_bler(config, coding, mc, workers=1)
    threaded = simulate_avg_bler(config, coding, mc, workers=3)
    again = simulate_avg_bler(config, coding, mc, workers=1)
    assert serial.model_dump_json() == threaded.model_dump_json() == again.model_dump_json()


def test_disjoint_seeds_agree(fig1_report, coding):
    """Two seeds agree within four combined standard errors"""
    config = RunConfig(rho_db=20.0, T=2).system()
    other = simulate_avg_bler(config, coding, McConfig(seed=2, trials=200_000, batch=50_000))
    for name in ("eps11", "eps12", "eps22", "eps1"):
        a, b = getattr(fig1_report, name), getattr(other, name)
        assert abs(a.value - b.value) <= 4 * np.hypot(a.std_err, b.std_err)


def test_report_structure(fig1_report):
    """Standard errors, trial count and the product surrogate"""
    assert fig1_report.trials_used == 200_000
    for name in ("eps11", "eps12", "eps22", "eps1", "eps2"):
        estimate = getattr(fig1_report, name)
        assert estimate.std_err is not None and estimate.std_err >= 0
    assert fig1_report.eps2.value == fig1_report.eps22.value
    assert fig1_report.eps1_product == pytest.approx(
        combine_sic(fig1_report.eps12.value, fig1_report.eps11.value)
    )


def test_near_user_ordering(fig1_report):
    """Joint near-user failure dominates each stage"""
    assert fig1_report.eps1.value >= fig1_report.eps11.value
    assert fig1_report.eps1.value >= fig1_report.eps12.value


def test_near_user_decodes_far_message_better(fig1_report):
    """The stronger channel makes stage 12 no worse than stage 22"""
    slack = 3 * np.hypot(fig1_report.eps12.std_err, fig1_report.eps22.std_err)
    assert fig1_report.eps12.value <= fig1_report.eps22.value + slack


def test_near_user_error_free_at_extreme_snr(coding):
    """Near-user own-message BLER vanishes at very high SNR"""
    config = SystemConfig(rho=1e12, alpha1=0.1, d1=3.0, d2=7.0, eta=2.0, T=2)
    report = simulate_avg_bler(config, coding, McConfig(seed=4, trials=10_000, batch=10_000))
    assert report.eps11.value < 1e-12


def test_far_user_saturates_at_ceiling(coding):
    """At very high SNR the far user sees T * kappa and the BLER tends to Phi(T * kappa)"""
    config = SystemConfig(rho=1e12, alpha1=0.45, d1=3.0, d2=7.0, eta=2.0, T=1)
    report = simulate_avg_bler(config, coding, McConfig(seed=4, trials=10_000, batch=10_000))
    limit = float(instantaneous_bler(config.sinr_ceiling, coding.n2, coding.m))
    assert report.eps22.value == pytest.approx(limit, rel=1e-3)


def test_accumulated_sinr_bounded(coding):
    """Far-message SINR never reaches T * kappa"""
    config = RunConfig(rho_db=30.0, T=3).system()
    samples = sample_accumulated_sinr(config, "22", McConfig(seed=8, trials=10_000, batch=4_000))
    assert samples.size == 10_000
    assert np.all(samples < config.sinr_ceiling)
    with pytest.raises(SimulationError):
        sample_accumulated_sinr(config, "21")


def test_empirical_cdf():
    """Step function of the sample"""
    samples = np.arange(1, 101, dtype=float)
    assert empirical_cdf(samples, 0.5) == 0.0
    assert empirical_cdf(samples, 100.0) == 1.0
    assert empirical_cdf(samples, 50.0) == pytest.approx(0.5)
    assert np.allclose(empirical_cdf(samples, np.array([10.0, 90.0])), [0.1, 0.9])
    with pytest.raises(SimulationError):
        empirical_cdf([], 1.0)

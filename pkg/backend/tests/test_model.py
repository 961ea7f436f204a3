"""
Tests for the Finite-Blocklength Model
"""

import math

import numpy as np
import pytest
from pydantic import ValidationError
from scipy.stats import norm

from backend.model import (
    CodingConfig,
    ModelValidityError,
    RunConfig,
    SystemConfig,
    accumulate_sinr,
    db_to_linear,
    far_user_feasible,
    instantaneous_bler,
    linear_to_db,
    linearize,
    linearized_bler,
    mu,
)


@pytest.fixture
def fig1_config():
    return SystemConfig(rho=100.0, alpha1=0.1, d1=3.0, d2=7.0, eta=2.0, T=2)


def test_mu_values(fig1_config):
    """Path-loss gains of the two users"""
    assert mu(fig1_config, 1) == pytest.approx(0.1)
    assert mu(fig1_config, 2) == pytest.approx(0.02)


def test_mu_zero_distance():
    """A user at zero distance has unit gain"""
    config = SystemConfig(rho=1.0, alpha1=0.2, d1=0.0, d2=0.0, eta=3.5, T=1)
    assert mu(config, 1) == 1.0


def test_derived_power_quantities(fig1_config):
    """alpha2, kappa and the SINR ceiling"""
    assert fig1_config.alpha2 == pytest.approx(0.9)
    assert fig1_config.kappa == pytest.approx(9.0)
    assert fig1_config.sinr_ceiling == pytest.approx(18.0)


def test_system_config_validation():
    """Power split and user ordering are enforced"""
    with pytest.raises(ValidationError):
        SystemConfig(rho=1.0, alpha1=0.5, d1=3.0, d2=7.0, eta=2.0, T=1)
    with pytest.raises(ValidationError, match="farther"):
        SystemConfig(rho=1.0, alpha1=0.1, d1=8.0, d2=7.0, eta=2.0, T=1)
    with pytest.raises(ValidationError):
        SystemConfig(rho=0.0, alpha1=0.1, d1=3.0, d2=7.0, eta=2.0, T=1)


def test_with_power_split(fig1_config):
    """A new split keeps the rest of the scenario"""
    other = fig1_config.with_power_split(0.3)
    assert other.alpha1 == 0.3
    assert other.d2 == fig1_config.d2
    assert other.scenario().with_power_split(0.1) == fig1_config


def test_linearize_reference_values():
    """n=160, m=200 constants"""
    lin = linearize(160, 200)
    assert lin.theta == pytest.approx(0.74110, abs=1e-5)
    assert lin.lam == pytest.approx(3.9584, abs=1e-4)
    assert lin.upsilon == pytest.approx(0.61479, abs=1e-5)
    assert lin.tau == pytest.approx(0.86741, abs=1e-5)


def test_linearize_special_rates():
    """Rate 1 gives theta 1; rate 1/2 gives sqrt(2) - 1"""
    assert linearize(200, 200).theta == pytest.approx(1.0, rel=1e-14)
    assert linearize(300, 600).theta == pytest.approx(math.sqrt(2) - 1, rel=1e-14)


def test_linearize_rejects_short_blocks():
    """Blocklength below 100 is outside the approximation"""
    with pytest.raises(ModelValidityError, match="below 100"):
        linearize(50, 99)


def test_coding_config_rejects_short_blocks():
    """Construction enforces m >= 100"""
    with pytest.raises(ValidationError):
        CodingConfig(n1=10, n2=10, m=80)


def test_instantaneous_bler_at_midpoint():
    """Zero numerator gives one half"""
    theta = 2 ** (160 / 200) - 1
    assert instantaneous_bler(theta, 160, 200) == pytest.approx(0.5, abs=1e-12)


def test_instantaneous_bler_zero_sinr():
    """Vanishing dispersion limit is certain failure"""
    assert instantaneous_bler(0.0, 160, 200) == 1.0


def test_instantaneous_bler_recomputation():
    """Matches an independently coded normal approximation"""
    gamma, n, m = 10.0, 160, 200
    dispersion = (1 - 1 / (1 + gamma) ** 2) * (math.log2(math.e)) ** 2
    expected = norm.sf((math.log2(1 + gamma) - n / m) / math.sqrt(dispersion / m))
    assert instantaneous_bler(gamma, n, m) == pytest.approx(expected, rel=1e-10)


def test_instantaneous_bler_vectorized():
    """Arrays are evaluated elementwise, including the zero limit"""
    values = instantaneous_bler(np.array([0.0, 0.5, 1.0, 5.0]), 160, 200)
    assert values.shape == (4,)
    assert values[0] == 1.0
    assert np.all(np.diff(values) < 0)


def test_instantaneous_bler_rejects_negative_sinr():
    """SINR cannot be negative"""
    with pytest.raises(ModelValidityError):
        instantaneous_bler(-0.1, 160, 200)


def test_linearized_bler_branches():
    """Saturated, midpoint and knee values"""
    lin = linearize(160, 200)
    assert linearized_bler(lin.upsilon / 2, lin) == 1.0
    assert linearized_bler(lin.theta, lin) == pytest.approx(0.5)
    assert linearized_bler(lin.tau, lin) == pytest.approx(0.0, abs=1e-12)
    assert linearized_bler(lin.upsilon, lin) == pytest.approx(1.0, abs=1e-12)


def test_linearized_bler_nonincreasing():
    """The ramp never increases"""
    lin = linearize(160, 200)
    values = linearized_bler(np.linspace(0, 2 * lin.tau, 500), lin)
    assert np.all(np.diff(values) <= 0)


def test_linearization_error_bound():
    """sup |Xi - Phi| stays below 0.06 on a dense grid"""
    lin = linearize(160, 200)
    grid = np.linspace(0, 2 * lin.tau, 10_000)
    gap = np.abs(linearized_bler(grid, lin) - instantaneous_bler(grid, 160, 200))
    assert gap.max() <= 0.06


def test_accumulate_sinr():
    """Chase combining adds SINRs"""
    assert accumulate_sinr([1.0]) == 1.0
    assert accumulate_sinr([0.5, 0.5, 0.5]) == pytest.approx(1.5)


def test_accumulate_sinr_bounded_by_ceiling(fig1_config):
    """Far-user rounds below kappa sum below T * kappa"""
    rng = np.random.default_rng(7)
    g = rng.exponential(size=fig1_config.T) * fig1_config.rho * fig1_config.mu(2)
    rounds = fig1_config.alpha2 * g / (fig1_config.alpha1 * g + 1)
    assert all(r < fig1_config.kappa for r in rounds)
    assert accumulate_sinr(rounds) < fig1_config.sinr_ceiling


def test_accumulate_sinr_rejects_empty():
    """At least one round is needed"""
    with pytest.raises(ModelValidityError, match="At least one"):
        accumulate_sinr([])


def test_far_user_feasible(fig1_config):
    """theta2 must stay below T * kappa"""
    assert far_user_feasible(fig1_config, CodingConfig(n1=160, n2=160, m=200))
    assert not far_user_feasible(fig1_config, CodingConfig(n1=160, n2=2000, m=200))


def test_db_conversion():
    """20 dB is a factor of 100"""
    assert db_to_linear(20.0) == pytest.approx(100.0)
    assert linear_to_db(100.0) == pytest.approx(20.0)
    with pytest.raises(ModelValidityError):
        linear_to_db(0.0)


def test_run_config_defaults_and_rejection():
    """Defaults build the reference scenario; unknown keys are rejected"""
    config = RunConfig()
    system = config.system()
    assert system.rho == pytest.approx(100.0)
    assert config.coding().m == 200
    with pytest.raises(ValidationError):
        RunConfig(unknown_key=1)
    with pytest.raises(ValidationError, match="even"):
        RunConfig(quad_l=17)


def test_run_config_ordering_checked_on_build():
    """d1 > d2 fails when the system is built"""
    with pytest.raises(ValidationError):
        RunConfig(d1=9.0, d2=7.0).system()

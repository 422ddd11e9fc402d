"""Shared fixtures: the two reference markets and a small experiment config."""

import copy
import json

import pytest

from stochimpact_cli.src.engine.model import (
    DiffusionSpec,
    ImpactFunction,
    MarketModel,
    PenaltyParams,
    Regime,
)
from stochimpact_cli.src.engine.simulation import InitialState


THETA_A = 1e-4
THETA_B = 5e-4


def _cir_market(
    mean_reversion: float,
    theta_a: float,
    sigma_a: float,
    theta_b: float,
    sigma_b: float,
    sigma: float,
) -> MarketModel:
    return MarketModel(
        f=ImpactFunction.linear(),
        g=ImpactFunction.linear(),
        a_dyn=DiffusionSpec.cir(mean_reversion, theta_a, sigma_a),
        b_dyn=DiffusionSpec.cir(mean_reversion, theta_b, sigma_b),
        rho=0.7,
        sigma=sigma,
    )


@pytest.fixture
def example2_model() -> MarketModel:
    """Slow mean reversion, impact levels of order 1e-4."""
    return _cir_market(1.0, THETA_A, 8e-3, THETA_B, 8e-3, sigma=0.2)


@pytest.fixture
def example1_model() -> MarketModel:
    """Fast mean reversion, tiny temporary impact."""
    return _cir_market(10.0, 2e-6, 1.5e-3, 5e-5, 3e-3, sigma=0.01)


@pytest.fixture
def nonlimiting() -> PenaltyParams:
    return PenaltyParams(kappa=10.0, phi=0.01, T=1.0, regime=Regime.NONLIMITING)


@pytest.fixture
def kappa_infinity() -> PenaltyParams:
    return PenaltyParams(kappa=10.0, phi=0.01, T=1.0, regime=Regime.KAPPA_INFINITY)


@pytest.fixture
def phi_zero() -> PenaltyParams:
    return PenaltyParams(kappa=10.0, phi=0.0, T=1.0, regime=Regime.KAPPA_INFINITY_PHI_ZERO)


@pytest.fixture
def example2_init() -> InitialState:
    return InitialState(x0=0.0, s0=40.0, q0=5000.0, a0=THETA_A, b0=THETA_B)


SMALL_CONFIG = {
    "name": "small",
    "model": {
        "temporary_impact": {"kind": "linear", "slope": 1.0, "intercept": 0.0},
        "permanent_impact": {"kind": "linear", "slope": 1.0, "intercept": 0.0},
        "temporary_dynamics": {
            "kind": "cir",
            "mean_reversion": 1.0,
            "long_run_mean": THETA_A,
            "vol_of_vol": 8e-3,
        },
        "permanent_dynamics": {
            "kind": "cir",
            "mean_reversion": 1.0,
            "long_run_mean": THETA_B,
            "vol_of_vol": 8e-3,
        },
        "rho": 0.7,
        "sigma": 0.2,
    },
    "penalties": {"kappa": 10.0, "phi": 0.01, "T": 1.0, "regime": "nonlimiting"},
    "sim": {"n_steps": 50, "master_seed": 42, "M": 8},
    "init": {"X0": 0.0, "S0": 40.0, "Q0": 5000.0},
    "strategies": [
        {"name": "ac", "kind": "almgren_chriss"},
        {"name": "order0", "kind": "order0"},
        {"name": "order1", "kind": "order1"},
    ],
}


@pytest.fixture
def small_config() -> dict:
    """A fresh copy of a small, fast experiment config."""
    return copy.deepcopy(SMALL_CONFIG)


@pytest.fixture
def write_config(tmp_path):
    """Write a config dict as JSON under tmp_path and return its path as a string."""

    def _write(data: dict, name: str = "experiment.json") -> str:
        path = tmp_path / name
        path.write_text(json.dumps(data))
        return str(path)

    return _write

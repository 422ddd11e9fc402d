"""Optimal liquidation under stochastic price impact.

The engine is importable without the CLI::

    from stochimpact_cli import StrategyKind, run_experiment
"""

from stochimpact_cli.cli.constants import CLI_VERSION as __version__
from stochimpact_cli.src.core.config import ExperimentConfig, parse_experiment
from stochimpact_cli.src.engine.model import (
    DiffusionSpec,
    ImpactFunction,
    MarketModel,
    PenaltyParams,
    Regime,
    local_coefficients,
)
from stochimpact_cli.src.engine.montecarlo import PerformanceSummary, run_experiment
from stochimpact_cli.src.engine.simulation import (
    InitialState,
    SimConfig,
    simulate_execution,
    simulate_impact_path,
)
from stochimpact_cli.src.engine.strategy import StrategyKind, h0, h1, rate, value_expansion
from stochimpact_cli.src.engine.verify import run_suite


__all__ = [
    "DiffusionSpec",
    "ExperimentConfig",
    "ImpactFunction",
    "InitialState",
    "MarketModel",
    "PenaltyParams",
    "PerformanceSummary",
    "Regime",
    "SimConfig",
    "StrategyKind",
    "__version__",
    "h0",
    "h1",
    "local_coefficients",
    "parse_experiment",
    "rate",
    "run_experiment",
    "run_suite",
    "simulate_execution",
    "simulate_impact_path",
    "value_expansion",
]

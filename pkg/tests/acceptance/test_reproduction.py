"""Monte Carlo reproduction targets on the shipped Example-2 configs.

Each run uses 10,000 paths, so the module is marked slow; run it with ``pytest -m slow``.
"""

import pytest

from stochimpact_cli.cli.core.config import ConfigManager
from stochimpact_cli.src.core.config import get_settings
from stochimpact_cli.src.engine.montecarlo import PerformanceSummary, run_experiment


pytestmark = pytest.mark.slow

RUNS = (
    "example2",
    "example2_kappa_inf",
    "example2_inf0",
    "example2_above",
    "example2_above_kappa_inf",
    "example2_above_inf0",
)


@pytest.fixture(scope="module")
def summaries() -> dict[str, PerformanceSummary]:
    settings = get_settings()
    results = {}
    for name in RUNS:
        experiment = ConfigManager(f"{name}.json").load_experiment()
        results[name] = run_experiment(
            experiment.build_model(),
            experiment.build_penalties(),
            experiment.build_sim(),
            experiment.build_strategies(),
            experiment.sim.M,
            experiment.build_init(),
            comparisons=experiment.comparison_pairs(),
            workers=settings.WORKERS,
            batch_size=settings.BATCH_SIZE,
        )
    return results


def _ratio(summary: PerformanceSummary, baseline: str, candidate: str) -> float:
    for entry in summary.relative:
        if (entry.baseline, entry.candidate) == (baseline, candidate):
            return entry.ratio_of_means_bp
    raise KeyError((baseline, candidate))


class TestAtLongRunMeans:
    def test_nonlimiting(self, summaries):
        summary = summaries["example2"]
        assert summary.M == 10000
        assert 3.0 <= _ratio(summary, "ac", "order0") <= 9.0
        assert 0.0 < _ratio(summary, "order0", "order1") < 0.2

    def test_kappa_infinity(self, summaries):
        summary = summaries["example2_kappa_inf"]
        assert 3.0 <= _ratio(summary, "ac", "order0") <= 9.0
        assert _ratio(summary, "order0", "order1") > 0.0

    def test_kappa_infinity_phi_zero(self, summaries):
        assert 0.3 <= _ratio(summaries["example2_inf0"], "order0", "order1") <= 1.6


class TestAboveLongRunMeans:
    @pytest.mark.parametrize("name", ["example2_above", "example2_above_kappa_inf"])
    def test_first_order_gain(self, summaries, name):
        assert 0.1 <= _ratio(summaries[name], "order0", "order1") <= 0.7

    def test_first_order_gain_without_running_penalty(self, summaries):
        assert 1.5 <= _ratio(summaries["example2_above_inf0"], "order0", "order1") <= 7.0


@pytest.mark.parametrize("name", RUNS)
def test_candidate_wins_on_the_median_path(summaries, name):
    for entry in summaries[name].relative:
        assert entry.quantiles[50] > 0.0, (entry.baseline, entry.candidate)
        quantiles = [entry.quantiles[level] for level in sorted(entry.quantiles)]
        assert quantiles == sorted(quantiles)

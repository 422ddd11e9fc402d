"""Monte Carlo command: compare strategies over M common-random-number paths."""

from typing import Any

from stochimpact_cli.cli.commands import ExperimentCommand
from stochimpact_cli.cli.constants import (
    EXIT_SUCCESS,
    METADATA_FILE,
    PATHS_CSV_FILE,
    SUMMARY_FILE,
)
from stochimpact_cli.cli.core.validation import Validator
from stochimpact_cli.src.core.config import get_settings
from stochimpact_cli.src.engine.montecarlo import BASIS_POINTS, QUANTILE_LEVELS, run_experiment
from stochimpact_cli.src.engine.reporting import (
    SUMMARY_UNITS,
    relative_column,
    write_json,
    write_paths_csv,
)


class MonteCarloCommand(ExperimentCommand):
    """Write ``summary.json``, ``paths.csv`` and ``metadata.json``."""

    def execute(
        self,
        config: str | None = None,
        out: str | None = None,
        seed: int | None = None,
        paths: int | None = None,
        workers: int | None = None,
        **kwargs: Any,
    ) -> int:
        try:
            self.output.print_banner("Monte Carlo", "Relative performance over simulated paths")
            experiment, out_dir = self.load_experiment(config, seed=seed, paths=paths, out=out)
            settings = get_settings()
            n_workers = Validator.validate_workers(workers or settings.WORKERS)

            kinds = experiment.build_strategies()
            for name in kinds:
                Validator.validate_strategy_name(name)
            summary = run_experiment(
                experiment.build_model(),
                experiment.build_penalties(),
                experiment.build_sim(),
                kinds,
                experiment.sim.M,
                experiment.build_init(),
                comparisons=experiment.comparison_pairs(),
                workers=n_workers,
                batch_size=settings.BATCH_SIZE,
            )

            write_json(out_dir / SUMMARY_FILE, summary.to_dict())
            write_paths_csv(out_dir / PATHS_CSV_FILE, summary)
            write_json(
                out_dir / METADATA_FILE,
                {
                    "units": SUMMARY_UNITS,
                    "basis_point_scale": BASIS_POINTS,
                    "quantile_levels": list(QUANTILE_LEVELS),
                    "strategies": {name: kind.label for name, kind in kinds.items()},
                    "n_steps": experiment.sim.n_steps,
                    "paths_columns": [
                        "path_index",
                        *(f"phi_{name}" for name in summary.strategies),
                        *(relative_column(r.baseline, r.candidate) for r in summary.relative),
                    ],
                },
            )

            self.output.print_key_value_pairs(
                {
                    "paths": summary.M,
                    "master seed": summary.master_seed,
                    "regime": summary.regime,
                    **{f"mean phi[{name}]": value for name, value in summary.mean_phi.items()},
                },
                title="Run",
            )
            if summary.relative:
                self.output.print_table(
                    ["candidate vs baseline", "ratio of means (bp)", "mean (bp)", "median (bp)"],
                    [
                        [
                            f"{r.candidate} vs {r.baseline}",
                            r.ratio_of_means_bp,
                            r.mean_bp,
                            r.quantiles.get(50),
                        ]
                        for r in summary.relative
                    ],
                    title="Relative performance",
                )
                for r in summary.relative:
                    if r.non_positive_baseline:
                        self.output.warning(
                            f"{len(r.non_positive_baseline)} path(s) with non-positive "
                            f"{r.baseline} excluded from the per-path statistic"
                        )
            self.output.success(f"Wrote {SUMMARY_FILE}, {PATHS_CSV_FILE} to {out_dir}")
            return EXIT_SUCCESS

        except Exception as e:
            return self.handle_error(e)

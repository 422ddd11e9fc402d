"""Path command: one simulated impact path, every requested strategy run against it."""

from typing import Any

from stochimpact_cli.cli.commands import ExperimentCommand
from stochimpact_cli.cli.constants import (
    DEFAULT_PATH_INDEX,
    EXIT_SUCCESS,
    PATH_CSV_TEMPLATE,
    PATH_METADATA_FILE,
)
from stochimpact_cli.cli.core.validation import Validator
from stochimpact_cli.cli.exceptions import ValidationError
from stochimpact_cli.src.engine.montecarlo import performance
from stochimpact_cli.src.engine.reporting import (
    TRAJECTORY_COLUMNS,
    TRAJECTORY_UNITS,
    write_json,
    write_trajectory_csv,
)
from stochimpact_cli.src.engine.simulation import (
    draw_path_noise,
    simulate_execution,
    simulate_impact_path,
)


class PathCommand(ExperimentCommand):
    """Write ``path_<name>.csv`` per strategy plus ``path_metadata.json``."""

    def execute(
        self,
        config: str | None = None,
        out: str | None = None,
        seed: int | None = None,
        path_index: int = DEFAULT_PATH_INDEX,
        strategies: list[str] | None = None,
        **kwargs: Any,
    ) -> int:
        try:
            self.output.print_banner("Path", "Simulate one path of (a, b) for each strategy")
            Validator.validate_path_index(path_index)
            experiment, out_dir = self.load_experiment(config, seed=seed, out=out)

            kinds = experiment.build_strategies()
            selected = self._select(kinds, strategies)
            model = experiment.build_model()
            penalties = experiment.build_penalties()
            cfg = experiment.build_sim()
            init = experiment.build_init()

            noise = draw_path_noise(cfg, [path_index])
            path = simulate_impact_path(
                model, cfg, init.a0, init.b0, path_index, penalties.T, noise=noise
            )
            rows = []
            files = {}
            for name in selected:
                trajectory = simulate_execution(
                    path, kinds[name], model, penalties, cfg, init, noise.xi[0]
                )
                file_name = PATH_CSV_TEMPLATE.format(name=name)
                write_trajectory_csv(out_dir / file_name, trajectory)
                files[name] = file_name
                rows.append(
                    [
                        name,
                        float(trajectory.Q[-1]),
                        float(trajectory.X[-1]),
                        float(performance(trajectory, penalties)),
                    ]
                )
                self.logger.debug("Wrote trajectory for %s", name)

            write_json(
                out_dir / PATH_METADATA_FILE,
                {
                    "columns": list(TRAJECTORY_COLUMNS),
                    "units": TRAJECTORY_UNITS,
                    "master_seed": cfg.master_seed,
                    "path_index": path_index,
                    "n_steps": cfg.n_steps,
                    "regime": penalties.regime.value,
                    "truncation_events": path.clamps,
                    "strategies": {name: kinds[name].label for name in selected},
                    "files": files,
                },
            )

            self.output.print_table(["strategy", "Q(T)", "X(T)", "phi"], rows)
            self.output.success(f"Wrote {len(selected)} trajectory file(s) to {out_dir}")
            return EXIT_SUCCESS

        except Exception as e:
            return self.handle_error(e)

    @staticmethod
    def _select(kinds: dict[str, Any], requested: list[str] | None) -> list[str]:
        if not requested:
            names = list(kinds)
        else:
            unknown = [name for name in requested if name not in kinds]
            if unknown:
                raise ValidationError(
                    f"Unknown strategy {unknown[0]!r}; configured: {', '.join(kinds)}",
                    field="strategy",
                )
            names = list(dict.fromkeys(requested))
        for name in names:
            Validator.validate_strategy_name(name)
        return names

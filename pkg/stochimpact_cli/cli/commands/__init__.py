"""CLI command modules."""

from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any

from stochimpact_cli.cli.constants import EXIT_FAILURE
from stochimpact_cli.cli.core.config import ConfigManager
from stochimpact_cli.cli.core.output import OutputFormatter
from stochimpact_cli.cli.core.validation import validate_cli_options
from stochimpact_cli.cli.exceptions import StochImpactError
from stochimpact_cli.cli.logger import CLILoggerMixin
from stochimpact_cli.src.core.config import ExperimentConfig, get_settings


class BaseCommand(ABC, CLILoggerMixin):
    """Base class for all CLI commands."""

    def __init__(self, output: OutputFormatter | None = None) -> None:
        """Initialize the base command.

        Args:
            output: Output formatter instance
        """
        super().__init__()
        self.output = output or OutputFormatter()

    @abstractmethod
    def execute(self, *args: Any, **kwargs: Any) -> int:
        """Execute the command.

        Returns:
            Exit code (0 for success, non-zero for failure)
        """

    def handle_error(self, error: Exception) -> int:
        """Handle command errors consistently.

        Args:
            error: Exception that occurred

        Returns:
            Appropriate exit code
        """
        self.logger.error("Command failed: %s", error)

        if isinstance(error, StochImpactError):
            self.output.error(str(error))
            return error.exit_code

        self.output.error(f"Unexpected error: {error}")
        return EXIT_FAILURE


class ExperimentCommand(BaseCommand):
    """Base for commands that run against an experiment config."""

    def load_experiment(
        self,
        config: str | None,
        seed: int | None = None,
        paths: int | None = None,
        out: str | None = None,
    ) -> tuple[ExperimentConfig, Path]:
        """Load, validate and override a config; return it with the resolved output dir.

        The output directory is ``--out``, else ``output.dir`` from the config, else the
        ``STOCHIMPACT_OUTPUT_DIR`` setting.
        """
        validate_cli_options(seed=seed, paths=paths, out=out)
        manager = ConfigManager(config)
        experiment = manager.load_experiment()
        self.logger.info("Loaded config %s", manager.config_path)
        experiment = ConfigManager.apply_overrides(experiment, seed=seed, paths=paths, out=out)
        out_dir = Path(experiment.output.dir or get_settings().OUTPUT_DIR)
        validate_cli_options(out=str(out_dir))
        return experiment, out_dir
